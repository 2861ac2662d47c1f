// Command line front end.  Subcommands:
//   analyze <config>              full pipeline on a config file
//   reproduce-paper               full pipeline on the built-in example
//   char-poly <config> <subject>  characteristic polynomial of one map
//                                 (subject = map name or "composite")
//   dyndeg <config>               first dynamical degree of the composite
//
// Exit codes: 0 success (an inconclusive verdict is still success), 1 for
// input or usage errors, 2 for internal invariant failures.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cydyn/analysis.hpp"
#include "cydyn/builtin_example.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string subject;
    std::string width_str;
    int depth = -1;                 // negative means keep the config value
    std::string format = "human";
    std::string out_path;
};

void add_common_flags(CLI::App* sub, Options& opt) {
    sub->add_option("--width", opt.width_str,
                    "target enclosure width for d1, as an exact rational like 1/1000000000");
    sub->add_option("--depth", opt.depth,
                    "maximum transport word length for cone exclusion searches")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"human", "machine"}))
        ->capture_default_str();
    sub->add_option("--out", opt.out_path, "write the report to this file instead of stdout");
}

cydyn::Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cydyn::Error("cannot open config file '" + path + "'");
    return cydyn::parse_config(in);
}

// Precedence for the refinement width: --width flag, then the
// CYDYN_REPORT_WIDTH environment variable, then the config file value.
void apply_overrides(cydyn::Config& cfg, const Options& opt) {
    std::string w = opt.width_str;
    if (w.empty()) {
        const char* env = std::getenv("CYDYN_REPORT_WIDTH");
        if (env && *env) w = env;
    }
    if (!w.empty()) {
        cydyn::Rat r = cydyn::parse_rat(w);
        if (r.sign() <= 0) throw cydyn::Error("refinement width must be positive");
        cfg.width = r;
    }
    if (opt.depth >= 0) cfg.depth = static_cast<unsigned>(opt.depth);
}

void emit(const cydyn::Report& rep, const Options& opt) {
    std::string text = opt.format == "machine" ? rep.render_machine()
                                               : rep.render_human(100);
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path);
    if (!out) throw cydyn::Error("cannot open output file '" + opt.out_path + "'");
    out << text;
    if (!out.good()) throw cydyn::Error("write to '" + opt.out_path + "' failed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact analyzer for fiberwise translations on Calabi-Yau threefold lattices"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* analyze = app.add_subcommand("analyze", "run the full pipeline on a config file");
    analyze->add_option("config", opt.config_path, "config file path")->required();
    add_common_flags(analyze, opt);

    CLI::App* repro = app.add_subcommand(
        "reproduce-paper", "run the full pipeline on the built-in worked example");
    add_common_flags(repro, opt);

    CLI::App* charpoly = app.add_subcommand(
        "char-poly", "characteristic polynomial of one synthesized map");
    charpoly->add_option("config", opt.config_path, "config file path")->required();
    charpoly->add_option("subject", opt.subject, "map name, or 'composite' for the pullback")
        ->required();
    add_common_flags(charpoly, opt);

    CLI::App* dyndeg = app.add_subcommand(
        "dyndeg", "first dynamical degree of the composite map");
    dyndeg->add_option("config", opt.config_path, "config file path")->required();
    add_common_flags(dyndeg, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        cydyn::Config cfg = repro->parsed()
                                ? cydyn::parse_config_text(cydyn::builtin_example_config())
                                : load_config_file(opt.config_path);
        apply_overrides(cfg, opt);
        cydyn::AnalysisResult res = cydyn::run_analysis(cfg);
        if (charpoly->parsed())
            emit(cydyn::charpoly_report(res, opt.subject), opt);
        else if (dyndeg->parsed())
            emit(cydyn::dyndeg_report(res), opt);
        else
            emit(res.report, opt);
        return 0;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const cydyn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
