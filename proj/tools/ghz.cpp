// ghz: command-line front end for the GHZ toolkit.  Runs the exact
// verifications, the ontological-model audit battery, branch listings and the
// typicality experiments, and emits stable text/json/csv reports.
//
// Exit codes: 0 success / expected verdicts, 1 scientific check failure,
// 2 input error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ghz/commands.hpp"

namespace {

ghz::Format parse_format(const std::string& f) {
    if (f == "json") return ghz::Format::Json;
    if (f == "csv") return ghz::Format::Csv;
    return ghz::Format::Text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GHZ three-particle experiment: exact checks, beable-model audits, "
                 "Everettian branch bookkeeping"};
    app.set_version_flag("--version", std::string(ghz::kToolVersion));
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "Output format (text, json, csv)")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    int exit_code = 0;
    auto emit = [&](const ghz::CommandOutcome& outcome) {
        std::cout << ghz::render_report(outcome.report, parse_format(format));
        exit_code = outcome.exit_code;
    };

    app.add_subcommand("verify-ghz",
                       "Verify the four Pauli-product eigen-identities and the Born "
                       "distribution against its closed form")
        ->callback([&] { emit(ghz::cmd_verify_ghz()); });

    app.add_subcommand("enumerate",
                       "Exhaustively check all 64 deterministic value assignments against "
                       "the four parity constraints")
        ->callback([&] { emit(ghz::cmd_enumerate()); });

    {
        auto* audit = app.add_subcommand("audit", "Run the local-causality audit battery on a model");
        auto model = std::make_shared<std::string>();
        audit->add_option("model", *model,
                          "bb | superdet | localdet:<6 signs> | file:<path>")
            ->required();
        audit->callback([&, model] { emit(ghz::cmd_audit(*model)); });
    }

    {
        auto* predict = app.add_subcommand("predict", "Joint outcome distribution of a model");
        auto model = std::make_shared<std::string>();
        auto settings = std::make_shared<std::string>();
        predict->add_option("model", *model, "bb | superdet | localdet:<6 signs> | file:<path>")
            ->required();
        predict->add_option("--settings", *settings, "e.g. xyy, or three radians a,b,c")
            ->required();
        predict->callback([&, model, settings] { emit(ghz::cmd_predict(*model, *settings)); });
    }

    {
        auto* branches = app.add_subcommand("branches", "Branch terms or one observer's relative worlds");
        auto settings = std::make_shared<std::string>();
        auto stage = std::make_shared<std::string>("t2");
        auto observer = std::make_shared<std::string>();
        branches->add_option("--settings", *settings, "canonical triple, e.g. xxx")->required();
        branches->add_option("--stage", *stage, "t0, t1 or t2 (default t2)");
        auto* obs_opt = branches->add_option("--observer", *observer, "A, B or C");
        branches->callback([&, settings, stage, observer, obs_opt] {
            std::optional<std::string> obs;
            if (obs_opt->count() > 0) obs = *observer;
            emit(ghz::cmd_branches(*settings, *stage, obs));
        });
    }

    {
        auto* typ = app.add_subcommand("typicality",
                                       "Weak-law deviation measure: exact binomial or seeded "
                                       "Monte Carlo over t2 branches");
        struct TypArgs {
            bool exact = false;
            double p = 0.0;
            long long n = 0;
            double eps = 0.0;
            std::string settings;
            std::string outcome;
            std::string measure = "born";
            std::uint64_t seed = 0;
        };
        auto args = std::make_shared<TypArgs>();
        typ->add_flag("--exact", args->exact, "Exact binomial mode (requires --p)");
        typ->add_option("--p", args->p, "Tracked event measure (exact mode)");
        typ->add_option("--n", args->n, "Number of repetitions")->required();
        typ->add_option("--eps", args->eps, "Deviation threshold")->required();
        typ->add_option("--settings", args->settings, "Canonical triple (Monte Carlo mode)");
        typ->add_option("--outcome", args->outcome, "Tracked outcome, e.g. ++- (Monte Carlo mode)");
        typ->add_option("--measure", args->measure, "born or branch_count (Monte Carlo mode)");
        auto* seed_opt = typ->add_option("--seed", args->seed, "PRNG seed (required for Monte Carlo)");
        typ->callback([&, args, seed_opt] {
            if (args->exact) {
                emit(ghz::cmd_typicality_exact(args->p, args->n, args->eps));
                return;
            }
            if (args->settings.empty() || args->outcome.empty())
                throw ghz::InvalidParam("Monte Carlo mode needs --settings and --outcome "
                                        "(or pass --exact with --p)");
            if (seed_opt->count() == 0)
                throw ghz::InvalidParam("--seed is required for Monte Carlo runs");
            emit(ghz::cmd_typicality_monte_carlo(args->settings, args->outcome, args->n, args->eps,
                                                 args->measure, args->seed));
        });
    }

    // let --format appear after the subcommand name as well
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ghz::MalformedModel& e) {
        std::cerr << "error: malformed model: " << e.what() << "\n";
        return 2;
    } catch (const ghz::UnsupportedSettings& e) {
        std::cerr << "error: unsupported settings: " << e.what() << "\n";
        return 2;
    } catch (const ghz::InvalidParam& e) {
        std::cerr << "error: invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const ghz::PreconditionFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
