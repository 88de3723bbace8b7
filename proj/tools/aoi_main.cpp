#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aoi/adaptive.hpp"
#include "aoi/analysis.hpp"
#include "aoi/csv.hpp"
#include "aoi/greedy.hpp"
#include "aoi/model.hpp"
#include "aoi/montecarlo.hpp"
#include "aoi/rlnc.hpp"

namespace {

using aoi::format_sig6;

void print_warnings(const aoi::ValidationReport& report) {
    for (const std::string& w : report.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
}

void print_kv(const char* key, double value) {
    std::cout << key << "=" << format_sig6(value) << "\n";
}

void print_summary(const aoi::ExperimentSummary& s) {
    std::cout << "scheme=" << aoi::to_string(s.scheme) << " K=" << s.k
              << " p1=" << format_sig6(s.p1) << " p2=" << format_sig6(s.p2)
              << " horizon=" << s.horizon << " paths=" << s.num_paths
              << " seed=" << s.master_seed << "\n";
    std::cout << "delta1_hat=" << format_sig6(s.delta1_hat) << " ci1=" << format_sig6(s.ci1)
              << "\n";
    std::cout << "delta2_hat=" << format_sig6(s.delta2_hat) << " ci2=" << format_sig6(s.ci2)
              << "\n";
    if (s.scheme == aoi::Scheme::Adaptive && s.cycles_total > 0) {
        std::cout << "cycles=" << s.cycles_total << " t1_mean=" << format_sig6(s.t1_mean)
                  << " t2_mean=" << format_sig6(s.t2_mean)
                  << " t3_mean=" << format_sig6(s.t3_mean) << "\n";
    }
    aoi::TheoryReport theory = aoi::theory_report(s.k, aoi::ChannelParams{s.p1, s.p2});
    std::cout << "delta1_theory=" << format_sig6(theory.delta1);
    if (s.scheme == aoi::Scheme::Adaptive && !theory.degenerate) {
        std::cout << " delta2_upper=" << format_sig6(theory.delta2_upper);
    }
    std::cout << "\n";
}

void print_verification(const aoi::VerificationReport& rep) {
    std::cout << "slots=" << rep.slots_run << " cycles_completed=" << rep.cycles_completed
              << "\n";
    std::cout << "decode_events=" << rep.decode_events << " agreements=" << rep.agreements
              << " agreement_rate=" << format_sig6(rep.agreement_rate()) << "\n";
    std::cout << "mismatches=" << rep.mismatches
              << " attributed_to_zero_coefficient_collisions=" << rep.attributed_mismatches
              << " unattributed=" << rep.unattributed_mismatches() << "\n";
    std::cout << "expected_novel_user1=" << rep.expected_novel_user1
              << " collisions_user1=" << rep.collisions_user1 << "\n";
    std::cout << "expected_novel_user2=" << rep.expected_novel_user2
              << " collisions_user2=" << rep.collisions_user2 << "\n";
    for (const aoi::MismatchLogEntry& e : rep.mismatch_log) {
        std::cout << "mismatch slot=" << e.slot << " user="
                  << (e.user == aoi::User::User1 ? 1 : 2) << " update=" << e.update_gen
                  << " collisions_in_window=" << e.collisions_in_window << "\n";
    }
}

struct CommonFlags {
    int k = 10;
    double p1 = 0.0;
    double p2 = 0.0;
    std::int64_t horizon = 100000;
    int paths = 50;
    std::uint64_t seed = 1;
};

void add_channel_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--p1", f.p1, "user-1 delivery probability")->required();
    cmd->add_option("--p2", f.p2, "user-2 delivery probability")->required();
}

void check_valid(const aoi::SimConfig& cfg, const aoi::ChannelParams& ch) {
    aoi::ValidationReport report = aoi::validate_config(cfg, ch);
    if (!report.ok()) {
        throw std::invalid_argument(report.errors.front());
    }
    print_warnings(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Age-of-information simulator for a two-user broadcast erasure channel"};
    app.require_subcommand(1);

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "run one parameter point");
    CommonFlags sim_flags;
    std::string sim_scheme;
    bool sim_oracle = false;
    std::string sim_out;
    sim_cmd->add_option("--scheme", sim_scheme, "greedy|adaptive")
        ->required()
        ->check(CLI::IsMember({"greedy", "adaptive"}));
    sim_cmd->add_option("--k", sim_flags.k, "symbols per update")->required();
    add_channel_flags(sim_cmd, sim_flags);
    sim_cmd->add_option("--horizon", sim_flags.horizon, "slots per sample path");
    sim_cmd->add_option("--paths", sim_flags.paths, "number of sample paths");
    sim_cmd->add_option("--seed", sim_flags.seed, "master seed");
    sim_cmd->add_flag("--oracle", sim_oracle, "verify decodes against the GF(256) rank model");
    sim_cmd->add_option("--out", sim_out, "write a one-row CSV");
    sim_cmd->callback([&] {
        aoi::SimConfig cfg;
        cfg.k = sim_flags.k;
        cfg.horizon = sim_flags.horizon;
        cfg.num_paths = sim_flags.paths;
        cfg.master_seed = sim_flags.seed;
        cfg.scheme = sim_scheme == "greedy" ? aoi::Scheme::Greedy : aoi::Scheme::Adaptive;
        cfg.oracle_mode = sim_oracle;
        aoi::ChannelParams ch{sim_flags.p1, sim_flags.p2};
        if (sim_oracle && cfg.scheme != aoi::Scheme::Adaptive) {
            throw std::invalid_argument("--oracle applies to the adaptive scheme");
        }
        check_valid(cfg, ch);

        aoi::ExperimentSummary summary = aoi::run_experiment(cfg, ch);
        print_summary(summary);
        if (sim_oracle) {
            aoi::VerificationReport rep = aoi::run_verified_simulation(cfg, ch);
            print_verification(rep);
        }
        if (!sim_out.empty()) {
            aoi::write_csv({&summary, 1}, sim_out);
        }
    });

    // sweep-p1
    auto* sp_cmd = app.add_subcommand("sweep-p1", "sweep user-1 delivery probability");
    CommonFlags sp_flags;
    std::vector<double> sp_grid;
    std::string sp_out;
    sp_cmd->add_option("--k", sp_flags.k, "symbols per update")->required();
    sp_cmd->add_option("--p2", sp_flags.p2, "user-2 delivery probability")->required();
    sp_cmd->add_option("--p1-grid", sp_grid, "comma-separated p1 values")
        ->required()
        ->delimiter(',');
    sp_cmd->add_option("--horizon", sp_flags.horizon, "slots per sample path");
    sp_cmd->add_option("--paths", sp_flags.paths, "number of sample paths");
    sp_cmd->add_option("--seed", sp_flags.seed, "master seed");
    sp_cmd->add_option("--out", sp_out, "output CSV path")->required();
    sp_cmd->callback([&] {
        aoi::SimConfig base;
        base.k = sp_flags.k;
        base.horizon = sp_flags.horizon;
        base.num_paths = sp_flags.paths;
        base.master_seed = sp_flags.seed;
        for (double p1 : sp_grid) {
            check_valid(base, aoi::ChannelParams{p1, sp_flags.p2});
        }
        std::vector<aoi::ExperimentSummary> rows =
            aoi::sweep_p1(sp_flags.k, sp_flags.p2, sp_grid, base);
        aoi::write_csv(rows, sp_out);
        std::cout << "wrote " << rows.size() << " rows to " << sp_out << "\n";
    });

    // sweep-k
    auto* sk_cmd = app.add_subcommand("sweep-k", "sweep the update size K");
    CommonFlags sk_flags;
    std::vector<int> sk_grid;
    std::string sk_out;
    add_channel_flags(sk_cmd, sk_flags);
    sk_cmd->add_option("--k-grid", sk_grid, "comma-separated K values")
        ->required()
        ->delimiter(',');
    sk_cmd->add_option("--horizon", sk_flags.horizon, "slots per sample path");
    sk_cmd->add_option("--paths", sk_flags.paths, "number of sample paths");
    sk_cmd->add_option("--seed", sk_flags.seed, "master seed");
    sk_cmd->add_option("--out", sk_out, "output CSV path")->required();
    sk_cmd->callback([&] {
        aoi::SimConfig base;
        base.horizon = sk_flags.horizon;
        base.num_paths = sk_flags.paths;
        base.master_seed = sk_flags.seed;
        for (int k : sk_grid) {
            aoi::SimConfig probe = base;
            probe.k = k;
            check_valid(probe, aoi::ChannelParams{sk_flags.p1, sk_flags.p2});
        }
        std::vector<aoi::ExperimentSummary> rows =
            aoi::sweep_k(sk_flags.p1, sk_flags.p2, sk_grid, base);
        aoi::write_csv(rows, sk_out);
        std::cout << "wrote " << rows.size() << " rows to " << sk_out << "\n";
    });

    // theory
    auto* th_cmd = app.add_subcommand("theory", "evaluate closed forms and bounds");
    CommonFlags th_flags;
    bool th_json = false;
    th_cmd->add_option("--k", th_flags.k, "symbols per update")->required();
    add_channel_flags(th_cmd, th_flags);
    th_cmd->add_flag("--json", th_json, "emit a flat JSON object");
    th_cmd->callback([&] {
        aoi::TheoryReport rep =
            aoi::theory_report(th_flags.k, aoi::ChannelParams{th_flags.p1, th_flags.p2});
        if (th_json) {
            nlohmann::json j;
            j["k"] = rep.k;
            j["p1"] = rep.p1;
            j["p2"] = rep.p2;
            j["degenerate"] = rep.degenerate;
            j["delta1"] = rep.delta1;
            j["q"] = rep.q;
            j["t1_mean"] = rep.t1_mean;
            j["t1_sq_reported"] = rep.t1_sq_reported;
            j["t1_sq_derived"] = rep.t1_sq_derived;
            j["z_mean"] = rep.z_mean;
            j["z_sq_reported"] = rep.z_sq_reported;
            j["z_sq_derived"] = rep.z_sq_derived;
            j["r"] = rep.r;
            j["n1bar_mean"] = rep.n1bar_mean;
            j["n1bar_sq"] = rep.n1bar_sq;
            j["sumz_mean"] = rep.sumz_mean;
            j["sumz_sq_bound"] = rep.sumz_sq_bound;
            j["t3_mean_bound"] = rep.t3_mean_bound;
            j["t3_sq_bound"] = rep.t3_sq_bound;
            j["delta2_upper"] = rep.delta2_upper;
            std::cout << j.dump() << "\n";
            return;
        }
        std::cout << "K=" << rep.k << " p1=" << format_sig6(rep.p1)
                  << " p2=" << format_sig6(rep.p2) << "\n";
        print_kv("delta1_theory", rep.delta1);
        print_kv("q", rep.q);
        print_kv("t1_mean", rep.t1_mean);
        print_kv("t1_sq_reported", rep.t1_sq_reported);
        print_kv("t1_sq_derived", rep.t1_sq_derived);
        print_kv("z_mean", rep.z_mean);
        print_kv("z_sq_reported", rep.z_sq_reported);
        print_kv("z_sq_derived", rep.z_sq_derived);
        if (rep.degenerate) {
            std::cout << "degenerate=1 (p1 = 1: stopping-time bounds diverge)\n";
            return;
        }
        std::cout << "degenerate=0\n";
        print_kv("r", rep.r);
        print_kv("n1bar_mean", rep.n1bar_mean);
        print_kv("n1bar_sq", rep.n1bar_sq);
        print_kv("sumz_mean", rep.sumz_mean);
        print_kv("sumz_sq_bound", rep.sumz_sq_bound);
        print_kv("t3_mean_bound", rep.t3_mean_bound);
        print_kv("t3_sq_bound", rep.t3_sq_bound);
        print_kv("delta2_upper", rep.delta2_upper);
    });

    // verify
    auto* vf_cmd = app.add_subcommand("verify", "check equation counting against the rank model");
    CommonFlags vf_flags;
    std::int64_t vf_cycles = 100;
    vf_cmd->add_option("--k", vf_flags.k, "symbols per update")->required();
    add_channel_flags(vf_cmd, vf_flags);
    vf_cmd->add_option("--cycles", vf_cycles, "completed cycles to verify")->required();
    vf_cmd->add_option("--seed", vf_flags.seed, "master seed");
    vf_cmd->callback([&] {
        if (vf_cycles < 1) {
            throw std::invalid_argument("cycles < 1");
        }
        aoi::SimConfig cfg;
        cfg.k = vf_flags.k;
        cfg.horizon = 50'000'000;  // safety cap; the cycle target stops the run
        cfg.num_paths = 1;
        cfg.master_seed = vf_flags.seed;
        cfg.scheme = aoi::Scheme::Adaptive;
        cfg.oracle_mode = true;
        aoi::ChannelParams ch{vf_flags.p1, vf_flags.p2};
        check_valid(cfg, ch);

        std::cout << "k=" << cfg.k << " p1=" << format_sig6(ch.p1)
                  << " p2=" << format_sig6(ch.p2) << " cycles=" << vf_cycles
                  << " seed=" << cfg.master_seed << "\n";
        aoi::VerificationReport rep = aoi::run_verified_simulation(cfg, ch, vf_cycles);
        print_verification(rep);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
