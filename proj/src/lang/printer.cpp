#include "flyfast/lang/printer.hpp"

#include <charconv>

namespace flyfast::lang {

std::string format_real(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{})
        return "nan";
    return std::string{ buf, ptr };
}

namespace {

// Binding strength: sums 1, products 2, unary minus 3, atoms 4.
int precedence(const Expr& e)
{
    switch (e.kind) {
    case ExprKind::add:
    case ExprKind::subtract: return 1;
    case ExprKind::multiply:
    case ExprKind::divide: return 2;
    case ExprKind::negate: return 3;
    default: return 4;
    }
}

void print(const Expr& e, const std::vector<std::string>* args, std::string& out);

void print_operand(const Expr& e, int min_prec, const std::vector<std::string>* args, std::string& out)
{
    if (precedence(e) < min_prec) {
        out += '(';
        print(e, args, out);
        out += ')';
    } else {
        print(e, args, out);
    }
}

void print(const Expr& e, const std::vector<std::string>* args, std::string& out)
{
    switch (e.kind) {
    case ExprKind::constant:
        if (e.value < 0.0) {
            out += '(';
            out += format_real(e.value);
            out += ')';
        } else {
            out += format_real(e.value);
        }
        return;
    case ExprKind::frc:
        out += "frc ";
        out += e.state;
        return;
    case ExprKind::arg:
        out += "frc ";
        out += args && e.arg < args->size() ? (*args)[e.arg] : "_" + std::to_string(e.arg);
        return;
    case ExprKind::negate:
        out += '-';
        print_operand(*e.lhs, 3, args, out);
        return;
    case ExprKind::paren:
        out += '(';
        print(*e.lhs, args, out);
        out += ')';
        return;
    case ExprKind::min:
    case ExprKind::max:
        out += e.kind == ExprKind::min ? "min(" : "max(";
        print(*e.lhs, args, out);
        out += ", ";
        print(*e.rhs, args, out);
        out += ')';
        return;
    default: break;
    }
    const int prec = precedence(e);
    const char* op = e.kind == ExprKind::add        ? " + "
                     : e.kind == ExprKind::subtract ? " - "
                     : e.kind == ExprKind::multiply ? " * "
                                                    : " / ";
    // Left-associative: the right operand needs parentheses at equal precedence.
    print_operand(*e.lhs, prec, args, out);
    out += op;
    print_operand(*e.rhs, prec + 1, args, out);
}

// Formula binding strength: implication is desugared away, so only
// disjunction (1), negation (2) and atoms/P (3) remain.
int precedence(const Formula& f)
{
    switch (f.kind) {
    case FormulaKind::disjunction: return 1;
    case FormulaKind::negation: return 2;
    default: return 3;
    }
}

void print(const Formula& f, std::string& out);
void print(const PathFormula& f, std::string& out);

void print_operand(const Formula& f, int min_prec, std::string& out)
{
    if (precedence(f) < min_prec) {
        out += '(';
        print(f, out);
        out += ')';
    } else {
        print(f, out);
    }
}

void print(const Formula& f, std::string& out)
{
    switch (f.kind) {
    case FormulaKind::atom: out += f.atom; return;
    case FormulaKind::negation:
        out += '!';
        print_operand(*f.lhs, 2, out);
        return;
    case FormulaKind::disjunction:
        print_operand(*f.lhs, 1, out);
        out += " | ";
        print_operand(*f.rhs, 2, out);
        return;
    case FormulaKind::probability:
        out += 'P';
        out += relation_symbol(f.relation);
        out += format_real(f.bound);
        out += " [ ";
        print(*f.path, out);
        out += " ]";
        return;
    }
}

void print(const PathFormula& f, std::string& out)
{
    if (f.kind == PathKind::next) {
        out += "X ";
        print(*f.lhs, out);
        return;
    }
    print(*f.lhs, out);
    out += " U<=";
    out += std::to_string(f.horizon);
    out += ' ';
    print(*f.rhs, out);
}

} // namespace

std::string to_text(const Expr& e)
{
    std::string out;
    print(e, nullptr, out);
    return out;
}

std::string to_text(const BExp& b)
{
    std::string out;
    print(*b.func, &b.args, out);
    out += b.relation == Comparison::less ? " < " : " > ";
    out += format_real(b.threshold);
    return out;
}

std::string to_text(const SystemSpec& spec)
{
    std::string out;
    for (const auto& def : spec.objects.definitions) {
        out += def.state;
        out += " :=";
        for (std::size_t i = 0; i < def.branches.size(); ++i) {
            out += i == 0 ? " " : " + ";
            out += def.branches[i].action;
            out += '.';
            out += def.branches[i].target;
        }
        out += ";\n";
    }
    if (!spec.probs.empty())
        out += '\n';
    for (const auto& p : spec.probs) {
        out += p.action;
        out += " :: ";
        out += to_text(*p.expr);
        out += ";\n";
    }
    if (!spec.labels.local.empty() || !spec.labels.global.empty())
        out += '\n';
    for (const auto& lab : spec.labels.local) {
        out += "label local ";
        out += lab.atom;
        out += " = ";
        for (std::size_t i = 0; i < lab.states.size(); ++i) {
            if (i > 0)
                out += ", ";
            out += lab.states[i];
        }
        out += ";\n";
    }
    for (const auto& lab : spec.labels.global) {
        out += "label global ";
        out += lab.atom;
        out += " = ";
        out += to_text(lab.bexp);
        out += ";\n";
    }
    if (spec.init_loc) {
        out += "\ninit <";
        for (std::size_t i = 0; i < spec.initial.size(); ++i) {
            if (i > 0)
                out += ", ";
            out += spec.initial[i].state;
            out += '[';
            out += std::to_string(spec.initial[i].count);
            out += ']';
        }
        out += ">;\n";
    }
    return out;
}

std::string to_text(const Formula& f)
{
    std::string out;
    print(f, out);
    return out;
}

std::string to_text(const PathFormula& f)
{
    std::string out;
    print(f, out);
    return out;
}

} // namespace flyfast::lang
