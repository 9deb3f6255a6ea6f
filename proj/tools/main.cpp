#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "cli.hpp"
#include "dunkl/error.hpp"

namespace {

using dunkl::cli::json;

int exit_code_for(dunkl::ErrorCode code) {
    using dunkl::ErrorCode;
    switch (code) {
        case ErrorCode::KOHoldsNoBlowup: return dunkl::cli::kEmpty;
        case ErrorCode::NoConvergence:
        case ErrorCode::HorizonTooSmall:
        case ErrorCode::UnclassifiableTail: return dunkl::cli::kFailure;
        default: return dunkl::cli::kValidation;
    }
}

struct Bound {
    std::string text;
    bool flag = false;
    CLI::Option* option = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dunkl Laplacian semilinear problems: Keller-Osserman, blow-up, Dirichlet and Monte Carlo tools"};
    app.require_subcommand(1);

    std::map<std::string, std::map<std::string, Bound>> bound;
    std::map<std::string, std::string> config_path;
    for (const auto& name : dunkl::cli::commands()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->set_help_flag("--help", "Print this help message and exit");  // frees -h / --h for the time step
        sub->add_option("--config", config_path[name], "JSON config document; flags override its fields");
        auto& slots = bound[name];
        for (const auto& f : dunkl::cli::fields(name)) {
            Bound& b = slots[f.key];
            std::string flag = f.key;
            std::replace(flag.begin(), flag.end(), '_', '-');
            if (name == "simulate" && f.key == "mode") {
                b.option = sub->add_option("mode", b.text, f.help);
            } else if (f.type == dunkl::cli::FieldType::Bool) {
                b.option = sub->add_flag("--" + flag, b.flag, f.help);
            } else {
                b.option = sub->add_option("--" + flag, b.text, f.help);
            }
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : dunkl::cli::kValidation;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        json file = nullptr;
        if (!config_path[command].empty()) {
            std::ifstream in(config_path[command]);
            if (!in) throw dunkl::Error(dunkl::ErrorCode::ConfigError, "cannot read " + config_path[command]);
            try {
                in >> file;
            } catch (const json::exception& e) {
                throw dunkl::Error(dunkl::ErrorCode::ConfigError, std::string("config: ") + e.what());
            }
        }
        json flags = json::object();
        for (const auto& f : dunkl::cli::fields(command)) {
            const Bound& b = bound[command][f.key];
            if (b.option->count() == 0) continue;
            flags[f.key] = f.type == dunkl::cli::FieldType::Bool ? json(b.flag) : dunkl::cli::parse_flag(f, b.text);
        }
        const json config = dunkl::cli::merge_config(command, file, flags);
        const auto outcome = dunkl::cli::run(command, config, std::cout);
        std::cout << outcome.doc.dump(2) << std::endl;
        if (!outcome.message.empty()) std::cerr << outcome.message << std::endl;
        return outcome.exit_code;
    } catch (const dunkl::Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return dunkl::cli::kFailure;
    }
}
