#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace flyfast::fixtures {

// Random well-formed .pop text. Every action probability stays in [0, 1/3]
// for any occupancy and a state has at most three branches, so every state
// is probabilistic everywhere on the simplex.
class RandomSpec
{
public:
    explicit RandomSpec(std::uint32_t seed) : _rng{ seed } {}

    std::string generate()
    {
        const int states = pick(1, 5);
        std::vector<std::string> names;
        for (int i = 0; i < states; ++i)
            names.push_back("Q" + std::to_string(i));

        std::string text = "// generated\n";
        std::vector<std::string> actions;
        for (int i = 0; i < states; ++i) {
            text += names[i] + " := ";
            const int branches = pick(1, 3);
            std::vector<std::string> used;
            for (int b = 0; b < branches; ++b) {
                std::string a;
                // sometimes reuse an action another state already has
                if (!actions.empty() && pick(0, 3) == 0)
                    a = actions[pick(0, static_cast<int>(actions.size()) - 1)];
                if (a.empty() || std::find(used.begin(), used.end(), a) != used.end()) {
                    a = "act" + std::to_string(actions.size());
                    actions.push_back(a);
                }
                used.push_back(a);
                text += (b ? " + " : "") + a + "." + names[pick(0, states - 1)];
            }
            text += ";\n";
        }
        for (const auto& a : actions)
            text += a + " :: " + expr(names, 3) + ";\n";
        text += "label local low = " + names[0] + ";\n";
        if (states > 1)
            text += "label local high = " + names[states - 1] + ", " + names[0] + ";\n";
        text += "label global many = frc " + names[pick(0, states - 1)] + " + 0.5 * frc " + names[0] +
                (pick(0, 1) ? " > " : " < ") + number(0.0, 1.0) + ";\n";
        text += "init <";
        bool any = false;
        for (int i = 0; i < states; ++i) {
            int count = pick(0, 4);
            if (i == states - 1 && !any)
                count = std::max(count, 1);
            any = any || count > 0;
            text += (i ? ", " : "") + names[i] + "[" + std::to_string(count) + "]";
        }
        return text + ">;\n";
    }

private:
    std::mt19937 _rng;

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>{ lo, hi }(_rng); }

    std::string number(double lo, double hi)
    {
        const double v = std::uniform_real_distribution<double>{ lo, hi }(_rng);
        return std::to_string(std::round(v * 1000) / 1000).substr(0, 5);
    }

    // A value in [0, 1/3] on the whole simplex.
    std::string expr(const std::vector<std::string>& names, int depth)
    {
        const auto state = [&] { return names[pick(0, static_cast<int>(names.size()) - 1)]; };
        switch (depth > 0 ? pick(0, 6) : pick(0, 2)) {
        case 0: return number(0.0, 0.33);
        case 1: return number(0.0, 0.33) + " * frc " + state();
        case 2: return number(0.0, 0.33) + " * (1 - frc " + state() + ")";
        case 3: return "min(" + expr(names, depth - 1) + ", " + expr(names, depth - 1) + ")";
        case 4: return "max(" + expr(names, depth - 1) + ", " + expr(names, depth - 1) + ")";
        case 5: return "(" + expr(names, depth - 1) + " + " + expr(names, depth - 1) + ") * 0.5";
        default: return expr(names, depth - 1) + " * " + expr(names, depth - 1);
        }
    }
};

} // namespace flyfast::fixtures
