#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "weakmeas/experiment.hpp"
#include "weakmeas/result_table.hpp"
#include "weakmeas/version.hpp"

namespace {

int exit_code_for(const weakmeas::Error& e) {
    const std::string code = e.code();
    if (code == "config" || code == "validation") return 2;
    if (code == "capacity" || code == "truncation") return 3;
    if (code == "io") return 5;
    return 4;
}

void report(const weakmeas::Error& e) {
    std::cerr << "error[" << e.code() << "]: " << e.what() << "\n";
    if (const auto* cfg = dynamic_cast<const weakmeas::ConfigError*>(&e))
        for (const std::string& issue : cfg->issues())
            std::cerr << "  - " << issue << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-measurement simulation toolkit"};
    app.set_version_flag("--version", std::string("weakmeas ") +
                                          weakmeas::kVersion + " (" +
                                          weakmeas::build_id() + ")");
    app.require_subcommand(1);

    std::string config_path;
    std::string output_override;
    std::string format_override;
    std::optional<uint64_t> seed_override;

    CLI::App* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--output", output_override, "output path (overrides config)");
    run->add_option("--format", format_override, "csv or json (overrides config)")
        ->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--seed", seed_override, "sampling seed (overrides config)");

    CLI::App* validate = app.add_subcommand("validate", "check a config file");
    validate->add_option("config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            weakmeas::parse_config_file(config_path);
            std::cout << "ok: " << config_path << "\n";
            return 0;
        }

        weakmeas::ExperimentConfig cfg = weakmeas::parse_config_file(config_path);
        if (seed_override.has_value()) {
            if (!cfg.sampling.has_value()) cfg.sampling.emplace();
            cfg.sampling->seed = *seed_override;
            if (cfg.sampling->shots == 0) cfg.sampling->shots = 1;
        }
        if (!format_override.empty())
            cfg.format = format_override == "json" ? weakmeas::OutputFormat::json
                                                   : weakmeas::OutputFormat::csv;
        if (!output_override.empty()) cfg.output_path = output_override;

        weakmeas::ResultTable table = weakmeas::run_experiment(cfg);
        if (cfg.output_path.empty()) {
            if (cfg.format == weakmeas::OutputFormat::csv)
                weakmeas::emit_csv(table, std::cout);
            else
                weakmeas::emit_json(table, std::cout);
        } else {
            weakmeas::emit(table, cfg.format, cfg.output_path);
            std::cerr << "wrote " << cfg.output_path << " (" << table.rows.size()
                      << " rows)\n";
        }
        return 0;
    } catch (const weakmeas::Error& e) {
        report(e);
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 4;
    }
}
