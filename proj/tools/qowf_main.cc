// qowf: batch experiment driver.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qowf/cli/experiment.h"
#include "qowf/cli/verify.h"
#include "qowf/util/error.h"

namespace fs = std::filesystem;

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string mode;
    std::string module;
    bool inject_fault = false;
};

int report_error(const std::string& kind, const std::string& field, const std::string& message) {
    std::cerr << qowf::error_json(kind, field, message).dump() << "\n";
    return 1;
}

int run(const std::string& command, const Flags& flags) {
    try {
        nlohmann::json config;
        fs::path base = ".";
        if (!flags.config.empty()) {
            config = qowf::load_json(flags.config, "config");
            base = fs::path(flags.config).parent_path();
            if (base.empty()) {
                base = ".";
            }
        } else if (command != "verify") {
            return report_error("invalid_input", "config", "--config is required");
        }
        if (command == "verify") {
            if (config.is_null()) {
                config = nlohmann::json::object();
            }
            if (!flags.module.empty()) {
                config["modules"] = flags.module;
            }
            if (flags.inject_fault) {
                config["inject_fault"] = true;
            }
        }
        qowf::Overrides overrides;
        overrides.seed = flags.seed;
        if (!flags.mode.empty()) {
            overrides.mode = flags.mode;
        }
        qowf::ExperimentOutcome outcome = qowf::run_experiment(command, config, base, overrides);
        const std::string text = outcome.report.dump(2) + "\n";
        if (flags.out.empty()) {
            std::cout << text;
        } else {
            qowf::write_atomic(flags.out, text);
            for (const auto& line : outcome.summary) {
                std::cout << line << "\n";
            }
        }
        return outcome.passed ? 0 : 2;
    } catch (const qowf::Error& e) {
        return report_error(qowf::to_string(e.kind()), e.field(), e.what());
    } catch (const nlohmann::json::exception& e) {
        return report_error("invalid_input", "config", e.what());
    } catch (const std::exception& e) {
        return report_error("internal", "", e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum one-way function reductions: experiment driver"};
    app.require_subcommand(1);
    Flags flags;
    const std::pair<const char*, const char*> commands[] = {
        {"sample", "sampler-from-inverter reductions (t-qs, t-distqs)"},
        {"invert", "inverter success amplitudes"},
        {"reduce", "SZK candidate f_C and its sampler"},
        {"il", "hashing-based sampler construction (il-classical, il-quantum, lemma-pk)"},
        {"sd", "statistical difference via the SWAP test"},
        {"verify", "property checks over the instance zoo"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        auto* cfg = sub->add_option("--config", flags.config, "experiment JSON");
        if (std::string(name) != "verify") {
            cfg->required();
        }
        sub->add_option("--seed", flags.seed, "64-bit seed, overrides the config");
        sub->add_option("--out", flags.out, "report path (written atomically)");
        sub->add_option("--mode", flags.mode, "exact or montecarlo")
            ->check(CLI::IsMember({"exact", "montecarlo"}));
        if (std::string(name) == "verify") {
            sub->add_option("--module", flags.module, "run one module's checks");
            sub->add_flag("--inject-fault", flags.inject_fault, "perturb the perfect inverters");
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("invalid_input", "arguments", e.what());
    }
    return run(app.get_subcommands().front()->get_name(), flags);
}
