#ifndef NIMEQ_CLI_PROTOCOL_HPP
#define NIMEQ_CLI_PROTOCOL_HPP

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nimeq {

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Switch protocol of the standalone optimizer processes. Each token is a
/// switch letter immediately followed by its argument, with no separating
/// blank: "-a0.5", "-g500", "-f/tmp/out".
///
///   -a .. -c  algorithm parameters (doubles, in algorithm order)
///   -g        maximum number of generations
///   -d        problem dimension
///   -n        number of parameters (validated against -a..-c)
///   -r        number of independent runs (default 1)
///   -s        random generator seed
///   -f        output directory
///   -p        population size (extension switch; default 20)
struct CliInvocation {
    std::map<char, std::string> switches;

    bool has(char s) const { return switches.count(s) != 0; }

    const std::string& require(char s) const {
        auto it = switches.find(s);
        if (it == switches.end())
            throw UsageError(std::string("missing required switch -") + s);
        return it->second;
    }

    long integer(char s) const {
        const std::string& raw = require(s);
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(raw, &used);
        } catch (const std::exception&) {
            throw UsageError(std::string("switch -") + s + " needs an integer, got '" + raw + "'");
        }
        if (used != raw.size())
            throw UsageError(std::string("switch -") + s + " needs an integer, got '" + raw + "'");
        return value;
    }

    long integer_or(char s, long fallback) const { return has(s) ? integer(s) : fallback; }

    /// Values of -a, -b, -c in that order, stopping at the first absent one.
    std::vector<double> algorithm_params() const {
        std::vector<double> params;
        for (char s : {'a', 'b', 'c'}) {
            auto it = switches.find(s);
            if (it == switches.end()) break;
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(it->second, &used);
            } catch (const std::exception&) {
                throw UsageError(std::string("switch -") + s + " needs a number, got '" +
                                 it->second + "'");
            }
            if (used != it->second.size())
                throw UsageError(std::string("switch -") + s + " needs a number, got '" +
                                 it->second + "'");
            params.push_back(value);
        }
        return params;
    }
};

/// Parses protocol tokens. Violations of the no-blank rule (a bare "-g"
/// followed by "500") surface as usage errors, as do unknown switch letters,
/// duplicated switches and non-numeric arguments.
inline CliInvocation parse_cli(std::span<const std::string> tokens) {
    static constexpr char kKnown[] = {'a', 'b', 'c', 'g', 'd', 'n', 'r', 's', 'f', 'p'};

    if (tokens.empty()) throw UsageError("no switches given");
    CliInvocation inv;
    for (const std::string& token : tokens) {
        if (token.size() < 2 || token[0] != '-')
            throw UsageError("malformed token '" + token +
                             "' (expected switch letter glued to its argument)");
        const char letter = token[1];
        bool known = false;
        for (char k : kKnown) known |= (k == letter);
        if (!known) throw UsageError(std::string("unknown switch -") + letter);
        if (token.size() == 2)
            throw UsageError(std::string("switch -") + letter +
                             " has no argument attached (blank-separated arguments are not "
                             "part of the protocol)");
        if (!inv.switches.emplace(letter, token.substr(2)).second)
            throw UsageError(std::string("duplicate switch -") + letter);
    }

    // -b without -a (or -c without -b) would make the parameter order ambiguous.
    if (inv.has('b') && !inv.has('a')) throw UsageError("switch -b given without -a");
    if (inv.has('c') && !inv.has('b')) throw UsageError("switch -c given without -b");

    // Validate numeric arguments eagerly so bad invocations fail up front.
    inv.algorithm_params();
    for (char s : {'g', 'd', 'n', 'r', 's', 'p'})
        if (inv.has(s) && inv.integer(s) < 0)
            throw UsageError(std::string("switch -") + s + " must be non-negative");

    if (inv.has('n')) {
        const long declared = inv.integer('n');
        const long actual = static_cast<long>(inv.algorithm_params().size());
        if (declared != actual)
            throw UsageError("switch -n declares " + std::to_string(declared) +
                             " parameters but " + std::to_string(actual) + " were passed");
    }
    return inv;
}

inline CliInvocation parse_cli(int argc, const char* const* argv) {
    std::vector<std::string> tokens(argv, argv + argc);
    return parse_cli(std::span<const std::string>(tokens));
}

}  // namespace nimeq

#endif
