// Standalone optimizer process. Obeys the glued switch/argument protocol:
//
//   ni_optimizer <algorithm> -a<p1> [-b<p2>] [-c<p3>] -g<gens> -d<dim>
//                [-n<nparams>] [-r<runs>] -s<seed> -f<outdir> [-p<popsize>]
//
// Runs the named algorithm once per seed (seed, seed+1, ... for -r runs) and
// writes one feature-vector file "<algorithm>.<seed>" per run into <outdir>.
// When the binary itself is installed under an algorithm's name (a copy or
// symlink called accPSO, BA, ...), the positional argument is dropped and the
// program name selects the algorithm.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "nimeq/cli_protocol.hpp"
#include "nimeq/harness.hpp"

namespace {

bool known_algorithm(const std::string& name) {
    for (nimeq::AlgorithmId id : nimeq::kAllAlgorithms)
        if (nimeq::algorithm_name(id) == name) return true;
    return false;
}

void print_usage(std::ostream& out) {
    out << "usage: ni_optimizer <algorithm> -a<p1> [-b<p2>] [-c<p3>] -g<gens> -d<dim>\n"
           "                    [-n<nparams>] [-r<runs>] -s<seed> -f<outdir> [-p<popsize>]\n"
           "algorithms: accPSO accFA PSO FA FAv2 BA\n"
           "Switch and argument form one token (\"-g500\", not \"-g 500\").\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string algorithm = std::filesystem::path(argv[0]).filename().string();
    if (!known_algorithm(algorithm)) {
        if (args.empty() || args.front().empty() || args.front().front() == '-') {
            print_usage(std::cerr);
            return 2;
        }
        algorithm = args.front();
        args.erase(args.begin());
    }

    try {
        const nimeq::CliInvocation inv = nimeq::parse_cli(args);
        return nimeq::standalone_optimizer_main(algorithm, inv);
    } catch (const nimeq::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        print_usage(std::cerr);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
