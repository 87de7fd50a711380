// command line front end: parse a request, run it, emit one JSON (or text)
// report on stdout or into --out.  Exit codes: 0 all checks passed, 1 a
// reported check failed, 2 the request itself was bad, 3 unexpected failure.

#include <fstream>
#include <iostream>

#include <symdisc/symdisc.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        symdisc::AnalysisRequest req = symdisc::parse_args(args);
        symdisc::RunResult result = symdisc::run(req);
        if (req.out_path && req.command != "help") {
            std::ofstream out(*req.out_path);
            if (!out) throw symdisc::UsageError("cannot open output file " + *req.out_path);
            out << result.rendered;
        } else {
            std::cout << result.rendered;
        }
        return result.exit_code;
    } catch (const symdisc::Error& e) {
        std::cerr << symdisc::error_report(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << symdisc::error_report(e);
        return 3;
    }
}
