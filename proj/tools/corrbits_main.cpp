#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "corrbits/corrbits.hpp"

namespace {

using namespace corrbits;

constexpr double kFixtureTolerance = 1e-3;    // analytic values vs 3-decimal references
constexpr double kStochasticTolerance = 1e-2; // Monte Carlo rows, wide band
constexpr std::uint64_t kFixtureSeed = 42;

int write_output(const Document& doc, OutputFormat format, const std::string& out_path) {
    const std::string text = doc.render(format);
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << out_path << "\n";
        return 2;
    }
    out << text;
    return 0;
}

OutputFormat parse_format(const std::string& name) {
    if (name == "tree") return OutputFormat::tree;
    if (name == "csv") return OutputFormat::csv;
    throw CLI::ValidationError("--format", "expected 'tree' or 'csv'");
}

// Unit vectors in the xz-plane with the requested inner product.
std::pair<BlochVector, BlochVector> pair_from_dot(double d) {
    if (!(d >= -1.0 && d <= 1.0))
        throw CLI::ValidationError("--dot", "inner product must lie in [-1, 1]");
    const double phi = std::acos(d);
    return {BlochVector{0.0, 0.0, 1.0}, BlochVector{std::sin(phi), 0.0, std::cos(phi)}};
}

// One line of the reproduction table.
struct FixtureRow {
    std::string quantity;
    std::string reference;
    std::string computed;
    std::string abs_diff;
    bool pass = false;
};

FixtureRow numeric_row(std::string quantity, double reference, double computed, double tol) {
    FixtureRow row;
    row.quantity = std::move(quantity);
    row.reference = format_real(reference);
    row.computed = format_real(computed);
    const double diff = std::abs(reference - computed);
    row.abs_diff = format_real(diff);
    row.pass = diff <= tol;
    return row;
}

FixtureRow bool_row(std::string quantity, bool reference, bool computed) {
    FixtureRow row;
    row.quantity = std::move(quantity);
    row.reference = format_bool(reference);
    row.computed = format_bool(computed);
    row.abs_diff = "-";
    row.pass = reference == computed;
    return row;
}

FixtureRow exact_row(std::string quantity, std::string reference, std::string computed) {
    FixtureRow row;
    row.quantity = std::move(quantity);
    row.pass = reference == computed;
    row.reference = std::move(reference);
    row.computed = std::move(computed);
    row.abs_diff = "-";
    return row;
}

// "block:code block:code ..." rendering of a codebook for one-line fixtures.
std::string compact_codebook(const HuffmanCodebook& book) {
    std::string out;
    for (const auto& [block, code] : book.codes) {
        if (!out.empty()) out.push_back(' ');
        for (unsigned t = 0; t < book.block_size_k; ++t)
            out.push_back((block >> (book.block_size_k - 1 - t)) & 1u ? '1' : '0');
        out.push_back(':');
        out += code.to_string();
    }
    return out;
}

int cmd_reproduce_paper(OutputFormat format, const std::string& out_path) {
    std::vector<FixtureRow> rows;

    const BitString worked = BitString::from_string("000010010000001100");
    const EncodeResult worked_enc = encode(worked, 2);
    rows.push_back(exact_row("worked_example_payload", "00110100001110",
                             worked_enc.compressed.to_string()));
    rows.push_back(numeric_row("worked_example_payload_bits", 14.0,
                               static_cast<double>(worked_enc.compressed.size()), 0.0));
    rows.push_back(numeric_row("worked_example_rate", 0.778, empirical_rate(worked, 2),
                               kFixtureTolerance));
    rows.push_back(exact_row("worked_example_codebook", "00:0 01:10 10:110 11:111",
                             compact_codebook(worked_enc.codebook)));

    rows.push_back(numeric_row("entropy_p0_7_9", 0.764, binary_entropy(7.0 / 9.0),
                               kFixtureTolerance));
    const double p_star = (1.0 - 1.0 / std::numbers::sqrt2) / 2.0;
    rows.push_back(numeric_row("entropy_p0_diag", 0.601, binary_entropy(p_star),
                               kFixtureTolerance));
    const double p_chain3 = (1.0 - std::cos(std::numbers::pi / 10.0)) / 2.0;
    rows.push_back(numeric_row("entropy_p0_chain_n3", 0.166, binary_entropy(p_chain3),
                               kFixtureTolerance));

    rows.push_back(numeric_row("expected_rate_diag_k2", 0.709, expected_rate(p_star, 2),
                               kFixtureTolerance));
    rows.push_back(numeric_row("expected_rate_diag_k4", 0.611, expected_rate(p_star, 4),
                               kFixtureTolerance));
    rows.push_back(numeric_row("expected_rate_diag_k8", 0.605, expected_rate(p_star, 8),
                               kFixtureTolerance));

    rows.push_back(numeric_row("chain_rate_n3_k9", 0.199,
                               chain_rates_analytic(3, 9).r_diag, kFixtureTolerance));
    rows.push_back(numeric_row("chain_rate_n3_k10", 0.192,
                               chain_rates_analytic(3, 10).r_diag, kFixtureTolerance));

    const InequalityReport n3 = evaluate_chain(3, 9, EvalMode::analytic, SourceKind::singlet);
    rows.push_back(bool_row("chain_violated_n3_k9", true, n3.violated));
    rows.push_back(bool_row("chain_rhs_sum_below_lhs_n3_k9", true, n3.rhs_sum < n3.lhs));

    bool n2_any_violation = false;
    for (unsigned k = 1; k <= 12; ++k)
        n2_any_violation |= evaluate_chain(2, k, EvalMode::analytic, SourceKind::singlet).violated;
    rows.push_back(bool_row("chain_violated_n2_k_up_to_12", false, n2_any_violation));

    bool extremal_exact = true;
    for (unsigned k = 1; k <= 24; ++k)
        extremal_exact &= expected_rate(0.0, k) == 1.0 / k && expected_rate(1.0, k) == 1.0 / k;
    rows.push_back(bool_row("extremal_rate_equals_1_over_k", true, extremal_exact));

    const auto min_n_k9 = minimal_violating_n(9, 64);
    rows.push_back(exact_row("minimal_violating_n_k9", "3",
                             min_n_k9 ? std::to_string(*min_n_k9) : "none"));
    const auto min_n_k2 = minimal_violating_n(2, 64);
    rows.push_back(exact_row("minimal_violating_n_k2", "none",
                             min_n_k2 ? std::to_string(*min_n_k2) : "none"));

    {
        const auto [a, b] = pair_from_dot(std::cos(std::numbers::pi / 10.0));
        const auto [x, y] = sample_singlet_pair(a, b, 900000, kFixtureSeed);
        rows.push_back(numeric_row("mc_rate_n3_k9 (stochastic)", 0.199,
                                   empirical_rate(xor_strings(x, y), 9), kStochasticTolerance));
    }
    {
        const InequalityReport lhv = evaluate_chain(3, 9, EvalMode::monte_carlo, SourceKind::lhv,
                                                    900000, kFixtureSeed + 1, 0.0);
        rows.push_back(bool_row("lhv_chain_violated_n3_k9 (stochastic)", false, lhv.violated));
    }

    Document doc;
    append_preamble(doc);
    doc.add("command", "reproduce-paper");
    doc.add("config.seed", kFixtureSeed);
    doc.add("config.tolerance_analytic", kFixtureTolerance);
    doc.add("config.tolerance_stochastic", kStochasticTolerance);

    bool all_pass = true;
    auto& table = doc.table();
    table.header = {"quantity", "paper_value", "computed_value", "abs_diff", "pass"};
    for (const auto& row : rows) {
        all_pass &= row.pass;
        table.rows.push_back(
            {row.quantity, row.reference, row.computed, row.abs_diff, row.pass ? "pass" : "FAIL"});
    }
    doc.add("rows_total", static_cast<std::uint64_t>(rows.size()));
    doc.add("all_pass", all_pass);

    const int io_status = write_output(doc, format, out_path);
    if (io_status != 0) return io_status;
    return all_pass ? 0 : 1;
}

int cmd_expected_rate(std::optional<double> p0_opt, std::optional<double> dot_opt, unsigned k,
                      const std::string& dump_path, OutputFormat format,
                      const std::string& out_path) {
    if (p0_opt.has_value() == dot_opt.has_value())
        throw CLI::ValidationError("expected-rate", "give exactly one of --p0 or --dot");
    double p0;
    if (p0_opt) {
        p0 = *p0_opt;
        if (!(p0 >= 0.0 && p0 <= 1.0))
            throw CLI::ValidationError("--p0", "probability must lie in [0, 1]");
    } else {
        if (!(*dot_opt >= -1.0 && *dot_opt <= 1.0))
            throw CLI::ValidationError("--dot", "inner product must lie in [-1, 1]");
        p0 = (1.0 - *dot_opt) / 2.0;
    }

    Document doc;
    append_preamble(doc);
    doc.add("command", "expected-rate");
    doc.add("config.k", k);
    if (p0_opt) doc.add("config.p0", *p0_opt);
    if (dot_opt) doc.add("config.dot", *dot_opt);
    doc.add("p0", p0);
    doc.add("rate", expected_rate(p0, k));
    doc.add("entropy", binary_entropy(p0));

    if (!dump_path.empty()) {
        const HuffmanCodebook book = build_codebook(expected_block_weights(p0, k));
        std::ofstream dump(dump_path, std::ios::binary);
        if (!dump) {
            std::cerr << "cannot open codebook file: " << dump_path << "\n";
            return 2;
        }
        dump << dump_codebook(book);
        doc.add("codebook_file", dump_path);
        doc.add("codebook_entries", static_cast<std::uint64_t>(book.codes.size()));
    }
    return write_output(doc, format, out_path);
}

int cmd_inequality(int n_settings, unsigned k, const std::string& mode_name,
                   const std::string& source_name, std::uint64_t n_bits, std::uint64_t seed,
                   std::optional<double> correction_c, bool shared_lambda, OutputFormat format,
                   const std::string& out_path) {
    EvalMode mode;
    if (mode_name == "analytic") mode = EvalMode::analytic;
    else if (mode_name == "monte-carlo") mode = EvalMode::monte_carlo;
    else throw CLI::ValidationError("--mode", "expected 'analytic' or 'monte-carlo'");
    SourceKind source;
    if (source_name == "singlet") source = SourceKind::singlet;
    else if (source_name == "lhv") source = SourceKind::lhv;
    else throw CLI::ValidationError("--source", "expected 'singlet' or 'lhv'");
    if (mode == EvalMode::monte_carlo && n_bits == 0)
        throw CLI::ValidationError("--n-bits", "monte-carlo mode needs --n-bits");

    const double c = correction_c.value_or(mode == EvalMode::monte_carlo ? 1.0 : 0.0);
    const SamplingVariant variant =
        shared_lambda ? SamplingVariant::shared_lambda : SamplingVariant::independent;
    const InequalityReport report =
        evaluate_chain(n_settings, k, mode, source, n_bits, seed, c, variant);

    Document doc;
    append_preamble(doc);
    doc.add("command", "inequality");
    doc.add("config.n_settings", n_settings);
    doc.add("config.k", k);
    doc.add("config.mode", mode_name);
    doc.add("config.source", source_name);
    doc.add("config.n_bits", n_bits);
    doc.add("config.seed", seed);
    doc.add("config.correction_c", c);
    doc.add("config.sampling",
            variant == SamplingVariant::shared_lambda ? "shared_lambda" : "independent");
    append_report(doc, report);
    return write_output(doc, format, out_path);
}

int cmd_simulate(std::optional<double> dot_opt, std::optional<int> n_settings,
                 std::optional<int> alice_index, std::optional<int> bob_index,
                 std::uint64_t n_bits, unsigned k, std::uint64_t seed, OutputFormat format,
                 const std::string& out_path) {
    const bool by_dot = dot_opt.has_value();
    const bool by_chain = n_settings.has_value();
    if (by_dot == by_chain)
        throw CLI::ValidationError("simulate",
                                   "give exactly one of --dot or --n-settings with indices");
    BlochVector a, b;
    if (by_dot) {
        std::tie(a, b) = pair_from_dot(*dot_opt);
    } else {
        if (!alice_index || !bob_index)
            throw CLI::ValidationError("simulate",
                                       "--n-settings needs --alice-index and --bob-index");
        const SettingsChain chain = chain_settings(*n_settings);
        const int n = *n_settings;
        if (*alice_index < 0 || *alice_index >= n || *bob_index < 0 || *bob_index >= n)
            throw CLI::ValidationError("simulate", "setting indices must lie in [0, N)");
        a = chain.alice_dirs[static_cast<std::size_t>(*alice_index)];
        b = chain.bob_dirs[static_cast<std::size_t>(*bob_index)];
    }

    const auto [x, y] = sample_singlet_pair(a, b, n_bits, seed);
    const BitString z = xor_strings(x, y);
    const double p0 = xor_distribution(a, b).p0;
    const double rate = empirical_rate(z, k);
    const double expected = expected_rate(p0, k);
    const double entropy = binary_entropy(p0);

    Document doc;
    append_preamble(doc);
    doc.add("command", "simulate");
    if (dot_opt) doc.add("config.dot", *dot_opt);
    if (n_settings) {
        doc.add("config.n_settings", *n_settings);
        doc.add("config.alice_index", *alice_index);
        doc.add("config.bob_index", *bob_index);
    }
    doc.add("config.n_bits", n_bits);
    doc.add("config.k", k);
    doc.add("config.seed", seed);
    doc.add("p0", p0);
    doc.add("empirical_rate", rate);
    doc.add("expected_rate", expected);
    doc.add("entropy", entropy);
    doc.add("gap_empirical_minus_expected", rate - expected);
    doc.add("gap_empirical_minus_entropy", rate - entropy);
    return write_output(doc, format, out_path);
}

int cmd_ncd(const std::string& x_str, const std::string& y_str, std::optional<double> dot_opt,
            std::uint64_t n_bits, unsigned k, const std::string& local_size, std::uint64_t seed,
            OutputFormat format, const std::string& out_path) {
    const bool literal = !x_str.empty() || !y_str.empty();
    if (literal == dot_opt.has_value())
        throw CLI::ValidationError("ncd", "give either --x and --y, or --dot with --n-bits");
    LocalSizeMode mode;
    if (local_size == "assumed") mode = LocalSizeMode::assumed_incompressible;
    else if (local_size == "measured") mode = LocalSizeMode::measured;
    else throw CLI::ValidationError("--local-size", "expected 'assumed' or 'measured'");

    BitString x, y;
    if (literal) {
        if (x_str.empty() || y_str.empty())
            throw CLI::ValidationError("ncd", "--x and --y must be given together");
        x = BitString::from_string(x_str);
        y = BitString::from_string(y_str);
    } else {
        const auto [a, b] = pair_from_dot(*dot_opt);
        std::tie(x, y) = sample_singlet_pair(a, b, n_bits, seed);
    }

    const CompressorSpec spec{CompressorKind::xor_block_huffman, k};
    const NcdValue value = ncd(x, y, spec, mode);

    Document doc;
    append_preamble(doc);
    doc.add("command", "ncd");
    if (literal) {
        doc.add("config.x_bits", static_cast<std::uint64_t>(x.size()));
        doc.add("config.y_bits", static_cast<std::uint64_t>(y.size()));
    } else {
        doc.add("config.dot", *dot_opt);
        doc.add("config.n_bits", n_bits);
        doc.add("config.seed", seed);
    }
    doc.add("config.k", k);
    doc.add("config.local_size", local_size);
    doc.add("c_x", value.c_x);
    doc.add("c_y", value.c_y);
    doc.add("c_xy", value.c_xy);
    doc.add("ncd", value.value);
    doc.add("zurek_distance_approx", zurek_distance_approx(x, y, spec, mode));
    return write_output(doc, format, out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Correlated bit strings, block compression rates, and the chain bound"};
    app.require_subcommand(1);

    std::string format_name = "tree";
    std::string out_path;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format_name, "Output format: tree or csv");
        sub->add_option("--out", out_path, "Write the document to this file instead of stdout");
    };

    auto* reproduce = app.add_subcommand(
        "reproduce-paper", "Check computed values against the published reference figures");
    add_common(reproduce);

    auto* rate_cmd =
        app.add_subcommand("expected-rate", "Expected block-code rate of a biased bit source");
    std::optional<double> rate_p0, rate_dot;
    unsigned rate_k = 0;
    std::string dump_path;
    rate_cmd->add_option("--p0", rate_p0, "Probability of a zero bit");
    rate_cmd->add_option("--dot", rate_dot, "Setting inner product; implies p0 = (1 - dot)/2");
    rate_cmd->add_option("--k", rate_k, "Block size in bits")->required();
    rate_cmd->add_option("--dump-codebook", dump_path, "Write the codebook to this file");
    add_common(rate_cmd);

    auto* ineq_cmd = app.add_subcommand("inequality", "Evaluate the chain bound");
    int ineq_n = 0;
    unsigned ineq_k = 0;
    std::string ineq_mode = "analytic";
    std::string ineq_source = "singlet";
    std::uint64_t ineq_bits = 0;
    std::uint64_t ineq_seed = 42;
    std::optional<double> ineq_c;
    bool ineq_shared = false;
    ineq_cmd->add_option("--n-settings", ineq_n, "Number of settings per side")->required();
    ineq_cmd->add_option("--k", ineq_k, "Block size in bits")->required();
    ineq_cmd->add_option("--mode", ineq_mode, "analytic or monte-carlo");
    ineq_cmd->add_option("--source", ineq_source, "singlet or lhv");
    ineq_cmd->add_option("--n-bits", ineq_bits, "String length per term (monte-carlo)");
    ineq_cmd->add_option("--seed", ineq_seed, "Master seed (monte-carlo)");
    ineq_cmd->add_option("--correction-c", ineq_c,
                         "Finite-size correction constant (default 0 analytic, 1 monte-carlo)");
    ineq_cmd->add_flag("--shared-lambda", ineq_shared,
                       "One hidden variable per round across all settings (lhv only)");
    add_common(ineq_cmd);

    auto* sim_cmd = app.add_subcommand("simulate", "Sample a correlated pair and rate it");
    std::optional<double> sim_dot;
    std::optional<int> sim_n, sim_alice, sim_bob;
    std::uint64_t sim_bits = 0;
    unsigned sim_k = 0;
    std::uint64_t sim_seed = 42;
    sim_cmd->add_option("--dot", sim_dot, "Setting inner product");
    sim_cmd->add_option("--n-settings", sim_n, "Chain length; picks directions by index");
    sim_cmd->add_option("--alice-index", sim_alice, "Alice setting index in [0, N)");
    sim_cmd->add_option("--bob-index", sim_bob, "Bob setting index in [0, N)");
    sim_cmd->add_option("--n-bits", sim_bits, "String length")->required();
    sim_cmd->add_option("--k", sim_k, "Block size in bits")->required();
    sim_cmd->add_option("--seed", sim_seed, "Seed");
    add_common(sim_cmd);

    auto* ncd_cmd = app.add_subcommand("ncd", "Normalized compression distance of two strings");
    std::string ncd_x, ncd_y;
    std::optional<double> ncd_dot;
    std::uint64_t ncd_bits = 0;
    unsigned ncd_k = 0;
    std::string ncd_local = "assumed";
    std::uint64_t ncd_seed = 42;
    ncd_cmd->add_option("--x", ncd_x, "First bit string, literal 0/1 text");
    ncd_cmd->add_option("--y", ncd_y, "Second bit string, literal 0/1 text");
    ncd_cmd->add_option("--dot", ncd_dot, "Sample a pair at this setting inner product");
    ncd_cmd->add_option("--n-bits", ncd_bits, "Sampled string length");
    ncd_cmd->add_option("--k", ncd_k, "Block size in bits")->required();
    ncd_cmd->add_option("--local-size", ncd_local, "assumed or measured");
    ncd_cmd->add_option("--seed", ncd_seed, "Seed");
    add_common(ncd_cmd);

    try {
        app.parse(argc, argv);
        const OutputFormat format = parse_format(format_name);
        if (reproduce->parsed()) return cmd_reproduce_paper(format, out_path);
        if (rate_cmd->parsed())
            return cmd_expected_rate(rate_p0, rate_dot, rate_k, dump_path, format, out_path);
        if (ineq_cmd->parsed())
            return cmd_inequality(ineq_n, ineq_k, ineq_mode, ineq_source, ineq_bits, ineq_seed,
                                  ineq_c, ineq_shared, format, out_path);
        if (sim_cmd->parsed())
            return cmd_simulate(sim_dot, sim_n, sim_alice, sim_bob, sim_bits, sim_k, sim_seed,
                                format, out_path);
        if (ncd_cmd->parsed())
            return cmd_ncd(ncd_x, ncd_y, ncd_dot, ncd_bits, ncd_k, ncd_local, ncd_seed, format,
                           out_path);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const corrbits::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
