#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fptrace/attack.hpp"
#include "fptrace/construct.hpp"
#include "fptrace/core.hpp"
#include "fptrace/estimate.hpp"
#include "fptrace/trace.hpp"
#include "fptrace/verify.hpp"

namespace {

using namespace fptrace;

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n')
            std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + out_path);
    out << content;
}

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> indices;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        indices.push_back(std::stoi(item));
    return indices;
}

Syndrome load_syndrome(const std::string& path) {
    nlohmann::json j;
    if (path.empty() || path == "-") {
        std::cin >> j;
    } else {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open syndrome file: " + path);
        in >> j;
    }
    Syndrome s;
    s.s = j.at("s").get<std::vector<double>>();
    if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(s.s.size()))
        throw std::runtime_error("syndrome length disagrees with its header");
    return s;
}

int run(int argc, char** argv) {
    CLI::App app{"fptrace: collusion-resistant fingerprinting codes -- construction, "
                 "verification, averaging-attack simulation, tracing, and rate estimation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    std::string out_path;
    app.add_option("--seed", seed, "global 64-bit seed")->capture_default_str();
    app.add_option("--threads", threads, "worker count for parallel verification");
    app.add_option("--out", out_path, "output path (default stdout)");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a code matrix");
    gen->require_subcommand(1);
    int gen_n = 0, gen_cols = 0, gen_m = 0, gen_t = 0;
    auto* gen_random = gen->add_subcommand(
        "random", "seeded Bernoulli(1/2) matrix: every entry is 1 with probability 1/2");
    gen_random->add_option("--n", gen_n, "code length (rows)")->required();
    gen_random->add_option("--cols", gen_cols, "number of users (columns)")->required();
    auto* gen_bch = gen->add_subcommand(
        "bch", "binary BCH parity-check matrix with designed distance 2t+1; any 2t columns "
               "are independent over the rationals, so coalitions of size <= t are traceable");
    gen_bch->add_option("--m", gen_m, "field degree, GF(2^m)")->required();
    gen_bch->add_option("--t", gen_t, "traceability parameter")->required();

    // verify
    auto* verify_cmd = app.add_subcommand(
        "verify", "decide the Hamming (t,T) / Euclidean (t,delta) light-complete-traceability "
                  "definitions, or the sufficient condition that any 2t columns are independent");
    std::string verify_code_path, verify_mode = "hamming", verify_delta_sq;
    int verify_t = 0;
    long long verify_T = 0;
    verify_cmd->add_option("--code", verify_code_path, "code file")->required();
    verify_cmd->add_option("--mode", verify_mode, "hamming|euclidean|independence")
        ->check(CLI::IsMember({"hamming", "euclidean", "independence"}));
    verify_cmd->add_option("--t", verify_t, "max coalition size")->required();
    verify_cmd->add_option("--T", verify_T, "sparse-noise support bound (hamming)");
    verify_cmd->add_option("--delta-sq", verify_delta_sq, "squared noise radius, rational p/q (euclidean)");

    // attack
    auto* attack_cmd = app.add_subcommand(
        "attack", "simulate the averaging attack: embed fingerprints, average the coalition's "
                  "copies, add noise, and extract the syndrome of inner products");
    std::string attack_code_path, attack_coalition, attack_noise = "none";
    int attack_host_dim = 0;
    attack_cmd->add_option("--code", attack_code_path, "code file")->required();
    attack_cmd->add_option("--coalition", attack_coalition, "1-based column indices, comma separated")
        ->required();
    attack_cmd->add_option("--noise", attack_noise,
                           "noise spec: none | ball:delta=<float> | sparse:T=<int>[,mag=<float>]");
    attack_cmd->add_option("--host-dim", attack_host_dim, "ambient dimension N (default 2n)");

    // trace
    auto* trace_cmd = app.add_subcommand(
        "trace", "recover the coalition from a syndrome by exhaustive search over all "
                 "coalitions of size <= t");
    std::string trace_code_path, trace_syndrome_path, trace_metric = "euclidean";
    int trace_t = 0;
    double trace_match_tol = -1.0;
    trace_cmd->add_option("--code", trace_code_path, "code file")->required();
    trace_cmd->add_option("--syndrome", trace_syndrome_path, "syndrome JSON file ('-' for stdin)");
    trace_cmd->add_option("--t", trace_t, "max coalition size")->required();
    trace_cmd->add_option("--metric", trace_metric, "euclidean|hamming")
        ->check(CLI::IsMember({"euclidean", "hamming"}));
    trace_cmd->add_option("--match-tol", trace_match_tol, "hamming per-coordinate match tolerance");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "probabilistic-analysis numerics");
    estimate->require_subcommand(1);
    int est_q = 0, est_r = 0, est_k = 0, est_t = 0, est_n = 0, est_cols = 0;
    long long est_trials = 100000;
    double est_tau = 0.0;
    bool est_exact_only = false;
    std::string est_model = "conservative";
    auto* est_badrow = estimate->add_subcommand(
        "bad-row", "probability that a random row has equal ones-fractions for two coalitions "
                   "of sizes q >= r sharing k columns");
    est_badrow->add_option("--q", est_q, "larger coalition size")->required();
    est_badrow->add_option("--r", est_r, "smaller coalition size")->required();
    est_badrow->add_option("--k", est_k, "intersection size")->required();
    est_badrow->add_flag("--exact", est_exact_only, "print only the exact rational");
    est_badrow->add_option("--trials", est_trials, "Monte Carlo trials")->capture_default_str();
    auto* est_rate = estimate->add_subcommand(
        "rate", "achievable-rate lower bound min_q -(log2 p(q) + h(tau) + tau log2((1-p)/p))/(2q)");
    est_rate->add_option("--t", est_t, "max coalition size")->required();
    est_rate->add_option("--tau", est_tau, "noise fraction, in [0, 1/2)")->required();
    est_rate->add_option("--model", est_model, "conservative|asymptotic|empirical")
        ->check(CLI::IsMember({"conservative", "asymptotic", "empirical"}));
    auto* est_expect = estimate->add_subcommand(
        "expectation", "log2 of the union bound on the expected number of bad coalition pairs");
    est_expect->add_option("--n", est_n, "code length")->required();
    est_expect->add_option("--cols", est_cols, "number of users M")->required();
    est_expect->add_option("--t", est_t, "max coalition size")->required();
    est_expect->add_option("--tau", est_tau, "noise fraction, in [0, 1/2)")->required();
    est_expect->add_option("--model", est_model, "conservative|asymptotic|empirical")
        ->check(CLI::IsMember({"conservative", "asymptotic", "empirical"}));

    // search
    auto* search_cmd = app.add_subcommand(
        "search", "rejection-sample random codes until one verifies as a Hamming (t,T) code");
    int search_n = 0, search_cols = 0, search_t = 0, search_attempts = 1000;
    long long search_T = 0;
    search_cmd->add_option("--n", search_n, "code length")->required();
    search_cmd->add_option("--cols", search_cols, "number of users")->required();
    search_cmd->add_option("--t", search_t, "max coalition size")->required();
    search_cmd->add_option("--T", search_T, "sparse-noise support bound")->required();
    search_cmd->add_option("--max-attempts", search_attempts, "attempt budget")->capture_default_str();

    // convert
    auto* convert_cmd = app.add_subcommand(
        "convert", "parameter conversion between the Hamming support bound T and the Euclidean "
                   "radius: delta = sqrt(2T)/(2t(t-1)) and T = floor(2 delta^2)");
    int convert_t = 0;
    long long convert_T = -1;
    std::string convert_delta_sq;
    convert_cmd->add_option("--t", convert_t, "max coalition size (T -> delta direction)");
    convert_cmd->add_option("--T", convert_T, "support bound");
    convert_cmd->add_option("--delta-sq", convert_delta_sq, "squared radius, rational p/q");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help/version exit cleanly; every usage error maps to exit code 2
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (threads < 1)
        threads = 1;

    if (gen_random->parsed()) {
        write_output(out_path, format_code(random_code(gen_n, gen_cols, seed)));
        return 0;
    }
    if (gen_bch->parsed()) {
        write_output(out_path, format_code(bch_parity_matrix(gen_m, gen_t)));
        return 0;
    }
    if (verify_cmd->parsed()) {
        BinaryCode code = load_code(verify_code_path);
        VerificationReport report;
        if (verify_mode == "hamming")
            report = is_hamming_ltc(code, verify_t, verify_T, threads);
        else if (verify_mode == "euclidean")
            report = is_euclidean_ltc(code, verify_t, parse_rational(verify_delta_sq), threads);
        else
            report = check_2t_independence(code, verify_t);
        write_output(out_path, report_to_json(report));
        return report.holds ? 0 : 1;
    }
    if (attack_cmd->parsed()) {
        BinaryCode code = load_code(attack_code_path);
        Coalition coalition(parse_index_list(attack_coalition));
        int n = code.rows();
        int N = attack_host_dim > 0 ? attack_host_dim : 2 * n;
        CarrierBasis carriers = make_carriers(n, N, seed);
        std::vector<double> host = make_host(N, n, seed ^ 0x9e3779b97f4a7c15ULL);
        NoiseSpec noise = NoiseSpec::parse(attack_noise, seed ^ 0xd1342543de82ef95ULL);
        std::vector<double> forged = forge(code, coalition, host, carriers, noise);
        Syndrome syndrome = extract_syndrome(forged, host, carriers);
        nlohmann::json j;
        j["n"] = n;
        j["s"] = syndrome.s;
        write_output(out_path, j.dump());
        return 0;
    }
    if (trace_cmd->parsed()) {
        BinaryCode code = load_code(trace_code_path);
        Syndrome syndrome = load_syndrome(trace_syndrome_path);
        TraceResult result =
            trace_metric == "euclidean"
                ? trace_euclidean(code, syndrome, trace_t)
                : trace_hamming(code, syndrome, trace_t,
                                trace_match_tol > 0 ? std::optional<double>(trace_match_tol)
                                                    : std::nullopt);
        write_output(out_path, trace_result_to_json(result));
        return result.ambiguous ? 1 : 0;
    }
    if (est_badrow->parsed()) {
        Rational exact = exact_bad_row_prob(est_q, est_r, est_k);
        if (est_exact_only) {
            write_output(out_path, to_string(exact));
            return 0;
        }
        McEstimate mc = mc_bad_row_prob(est_q, est_r, est_k, est_trials, seed);
        std::ostringstream csv;
        csv << "q,r,k,exact_num,exact_den,mc_freq,mc_stderr,trials\n"
            << est_q << ',' << est_r << ',' << est_k << ','
            << boost::multiprecision::numerator(exact) << ','
            << boost::multiprecision::denominator(exact) << ',' << mc.frequency << ','
            << mc.std_err << ',' << est_trials << '\n';
        write_output(out_path, csv.str());
        return 0;
    }
    if (est_rate->parsed()) {
        RateEstimate rate = rate_lower_bound(est_t, est_tau, pmodel_from_name(est_model));
        std::ostringstream csv;
        csv << "t,tau,model,r_hat,argmin_q\n"
            << est_t << ',' << est_tau << ',' << est_model << ',' << rate.r_hat << ','
            << rate.argmin_q << '\n';
        write_output(out_path, csv.str());
        return 0;
    }
    if (est_expect->parsed()) {
        double value = expected_bad_pairs_log2(est_n, est_cols, est_t, est_tau,
                                               pmodel_from_name(est_model));
        std::ostringstream line;
        line << value << '\n';
        write_output(out_path, line.str());
        return 0;
    }
    if (search_cmd->parsed()) {
        auto found = find_code(search_n, search_cols, search_t, search_T, search_attempts, seed,
                               threads);
        if (!found) {
            std::cerr << "no code found within " << search_attempts << " attempts\n";
            return 1;
        }
        std::cerr << "found after " << found->attempts_used << " attempts\n";
        write_output(out_path, format_code(found->code));
        return 0;
    }
    if (convert_cmd->parsed()) {
        if (!convert_delta_sq.empty()) {
            long long T = T_from_delta(parse_rational(convert_delta_sq));
            write_output(out_path, "T = " + std::to_string(T));
        } else {
            if (convert_t == 0 || convert_T < 0)
                throw CLI::ValidationError("convert", "need either --t with --T, or --delta-sq");
            ConversionResult result = delta_from_T(convert_t, convert_T);
            write_output(out_path, "delta_sq = " + to_string(result.delta_sq));
        }
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "fptrace: " << e.what() << '\n';
        return 2;
    }
}
