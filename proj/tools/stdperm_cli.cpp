#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stdperm/exact.hpp"
#include "stdperm/sampling.hpp"
#include "stdperm/stats.hpp"
#include "stdperm/surgery.hpp"

using namespace stdperm;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitStatFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

DiscreteDist load_dist(const std::string& spec) {
    if (spec.rfind("file:", 0) == 0) {
        std::ifstream in(spec.substr(5));
        if (!in) throw std::invalid_argument("cannot open dist file " + spec.substr(5));
        std::string joined, tok;
        while (in >> tok) {
            if (!joined.empty()) joined += ',';
            joined += tok;
        }
        return DiscreteDist::parse(joined);
    }
    return DiscreteDist::parse(spec);
}

std::vector<Symbol> parse_symbols(const std::string& s) {
    std::vector<Symbol> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoll(tok));
    }
    return out;
}

std::string join_symbols(const std::vector<Symbol>& v) {
    std::ostringstream out;
    for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    return out.str();
}

std::string join_ints(const std::vector<int>& v) {
    std::ostringstream out;
    for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    return out.str();
}

// "0,1:2;1:1" -> [((0,1), 2), ((1), 1)]
std::vector<std::pair<Necklace, int>> parse_tail_query(const std::string& s) {
    std::vector<std::pair<Necklace, int>> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ';')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("tail query needs word:level");
        out.emplace_back(Necklace(parse_symbols(part.substr(0, colon))),
                         std::stoi(part.substr(colon + 1)));
    }
    return out;
}

std::vector<std::vector<int>> parse_t_specs(const std::string& s) {
    std::vector<std::vector<int>> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ';')) {
        std::vector<int> spec;
        for (Symbol v : parse_symbols(part)) spec.push_back(static_cast<int>(v));
        out.push_back(std::move(spec));
    }
    return out;
}

struct Output {
    std::string format = "text";
    std::string path;

    std::ostream& stream() {
        if (!path.empty() && !file.is_open()) {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open output file " + path);
        }
        return file.is_open() ? file : std::cout;
    }

private:
    std::ofstream file;
};

void add_output_flags(CLI::App* cmd, Output& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", out.path, "Write output to this file instead of stdout");
}

void emit_config_header(Output& out, const std::string& config) {
    if (out.format == "text" || out.format == "csv")
        out.stream() << "# config " << config << " hash=" << fnv1a_hash(config) << "\n";
}

ordered_json report_json(const TestReport& r) {
    ordered_json j;
    j["name"] = r.name;
    j["pass"] = r.pass;
    j["statistic"] = r.statistic;
    j["dof"] = r.dof;
    j["p_value"] = r.p_value;
    j["details"] = r.details;
    j["config"] = r.config;
    j["config_hash"] = r.config_hash;
    return j;
}

int emit_reports(Output& out, const std::string& config, const std::vector<TestReport>& reports) {
    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.pass;
    if (out.format == "json") {
        ordered_json j;
        j["config"] = config;
        j["config_hash"] = fnv1a_hash(config);
        j["pass"] = all_pass;
        j["reports"] = ordered_json::array();
        for (const auto& r : reports) j["reports"].push_back(report_json(r));
        out.stream() << j.dump(2) << "\n";
    } else {
        emit_config_header(out, config);
        for (const auto& r : reports) {
            out.stream() << (r.pass ? "PASS " : "FAIL ") << r.name << "  stat=" << r.statistic
                         << " dof=" << r.dof << " p=" << r.p_value;
            for (const auto& [k, v] : r.details) out.stream() << " " << k << "=" << v;
            out.stream() << "\n";
        }
        out.stream() << (all_pass ? "ALL PASS" : "FAILED") << "\n";
    }
    return all_pass ? kExitPass : kExitStatFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random standardized permutations: sampling, exact laws, cycle surgery, verification"};
    app.require_subcommand(1);

    std::string dist_spec = "uniform:2";
    std::uint64_t seed = 1;
    int n = 100;
    int reps = 1;
    int threads = 1;
    double alpha = kDefaultAlpha;

    Output out;

    // sample
    auto* sample = app.add_subcommand("sample", "Draw i.i.d. sequences and their standardizations");
    sample->add_option("--dist", dist_spec, "uniform:<q> | geom:<q> | file:<path> | p0,p1,...");
    sample->add_option("--n", n, "Sequence length")->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "RNG seed");
    sample->add_option("--reps", reps, "Number of samples")->check(CLI::PositiveNumber);
    add_output_flags(sample, out);

    // census
    auto* census = app.add_subcommand("census", "Typed cycle census of a sequence");
    std::string input_seq;
    census->add_option("--input", input_seq, "Comma-separated sequence; sampled when absent");
    census->add_option("--dist", dist_spec, "Distribution used when sampling");
    census->add_option("--n", n, "Length when sampling")->check(CLI::PositiveNumber);
    census->add_option("--seed", seed, "RNG seed");
    add_output_flags(census, out);

    // exact
    auto* exact = app.add_subcommand("exact", "Exact typed-cycle laws");
    int kmax = 5;
    std::string tail_spec;
    exact->add_option("--dist", dist_spec, "Distribution");
    exact->add_option("--n", n, "Sequence length")->check(CLI::PositiveNumber);
    exact->add_option("--kmax", kmax, "Tabulate E(c_k) for k=1..kmax")->check(CLI::PositiveNumber);
    exact->add_option("--tail", tail_spec, "Joint tail query, e.g. 0,1:2;1:1");
    add_output_flags(exact, out);

    // surgery
    auto* surgery = app.add_subcommand("surgery", "Insert or remove a typed cycle");
    std::string word_spec;
    auto* insert = surgery->add_subcommand("insert", "Insert a cycle of the given type");
    auto* remove = surgery->add_subcommand("remove", "Remove the canonical cycle of the given type");
    for (auto* cmd : {insert, remove}) {
        cmd->add_option("--input", input_seq, "Comma-separated sequence (may be empty for insert)");
        cmd->add_option("--word", word_spec, "Primitive word, comma-separated")->required();
        add_output_flags(cmd, out);
    }
    surgery->require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "Monte Carlo verification suites");
    std::string ns_spec = "1000,10000,100000";
    std::string t_specs_str = "2;3;2,2";
    int q_spreading = 200;
    bool control = false;
    auto* v_fixed = verify->add_subcommand("small-fixed", "c_k vs geometric-sum limit, fixed alphabet");
    auto* v_spread = verify->add_subcommand("small-spreading", "c_k vs Poisson limit, growing alphabet");
    auto* v_pd = verify->add_subcommand("pd", "Large-cycle moments vs Poisson-Dirichlet");
    auto* v_clt = verify->add_subcommand("clt", "Cycle-count CLT trend");
    int verify_reps = 10000;
    for (auto* cmd : {v_fixed, v_spread, v_pd, v_clt}) {
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--reps", verify_reps, "Monte Carlo replications")->check(CLI::PositiveNumber);
        cmd->add_option("--threads", threads, "Worker threads (aggregation is deterministic)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--alpha", alpha, "Significance level");
        add_output_flags(cmd, out);
    }
    v_fixed->add_option("--dist", dist_spec, "Distribution");
    v_fixed->add_option("--n", n, "Sequence length");
    v_fixed->add_option("--kmax", kmax, "Check c_1..c_kmax");
    v_spread->add_option("--q", q_spreading, "Alphabet size");
    v_spread->add_option("--n", n, "Sequence length");
    v_spread->add_option("--kmax", kmax, "Check c_1..c_kmax");
    v_pd->add_option("--dist", dist_spec, "Distribution");
    v_pd->add_option("--n", n, "Sequence length");
    v_pd->add_option("--t-specs", t_specs_str, "Joint moment specs, e.g. 2;3;2,2");
    v_pd->add_flag("--control", control, "Use the uniform Fisher-Yates control sampler");
    v_clt->add_option("--dist", dist_spec, "Distribution");
    v_clt->add_option("--ns", ns_spec, "Comma-separated n grid");
    verify->require_subcommand(1);

    // pd
    auto* pd = app.add_subcommand("pd", "Sample Poisson-Dirichlet vectors");
    int top = 5;
    pd->add_option("--seed", seed, "RNG seed");
    pd->add_option("--reps", reps, "Number of vectors")->check(CLI::PositiveNumber);
    pd->add_option("--top", top, "Entries reported per vector")->check(CLI::PositiveNumber);
    add_output_flags(pd, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*sample) {
            const DiscreteDist dist = load_dist(dist_spec);
            std::ostringstream cfg;
            cfg << "cmd=sample dist=" << dist.describe() << " n=" << n << " seed=" << seed
                << " reps=" << reps;
            if (out.format == "json") {
                ordered_json j;
                j["config"] = cfg.str();
                j["config_hash"] = fnv1a_hash(cfg.str());
                j["samples"] = ordered_json::array();
                for (int rep = 0; rep < reps; ++rep) {
                    RngStream rng(seed, static_cast<std::uint64_t>(rep));
                    const StdPermSample s = sample_std_perm(dist, n, rng);
                    j["samples"].push_back({{"rep", rep},
                                            {"sequence", s.sequence},
                                            {"permutation", s.permutation.one_line()}});
                }
                out.stream() << j.dump(2) << "\n";
            } else {
                emit_config_header(out, cfg.str());
                if (out.format == "csv") out.stream() << "rep,sequence,permutation\n";
                for (int rep = 0; rep < reps; ++rep) {
                    RngStream rng(seed, static_cast<std::uint64_t>(rep));
                    const StdPermSample s = sample_std_perm(dist, n, rng);
                    if (out.format == "csv")
                        out.stream() << rep << ",\"" << join_symbols(s.sequence) << "\",\""
                                     << join_ints(s.permutation.one_line()) << "\"\n";
                    else
                        out.stream() << "sequence " << join_symbols(s.sequence) << "\npermutation "
                                     << join_ints(s.permutation.one_line()) << "\n";
                }
            }
            return kExitPass;
        }

        if (*census) {
            Sequence g;
            std::ostringstream cfg;
            if (!input_seq.empty()) {
                g = parse_symbols(input_seq);
                cfg << "cmd=census input=" << input_seq;
            } else {
                const DiscreteDist dist = load_dist(dist_spec);
                RngStream rng(seed);
                g = sample_sequence(dist, n, rng);
                cfg << "cmd=census dist=" << dist.describe() << " n=" << n << " seed=" << seed;
            }
            const CycleCensus c = census_by_type(g);
            if (out.format == "json") {
                ordered_json j;
                j["config"] = cfg.str();
                j["config_hash"] = fnv1a_hash(cfg.str());
                j["total"] = c.total;
                j["by_length"] = c.by_length;
                j["by_type"] = ordered_json::array();
                for (const auto& [nk, d] : c.by_type)
                    j["by_type"].push_back({{"necklace", nk.canonical()}, {"count", d}});
                out.stream() << j.dump(2) << "\n";
            } else {
                emit_config_header(out, cfg.str());
                if (out.format == "csv") {
                    out.stream() << "necklace,count\n";
                    for (const auto& [nk, d] : c.by_type)
                        out.stream() << "\"" << join_symbols(nk.canonical()) << "\"," << d << "\n";
                } else {
                    out.stream() << "total " << c.total << "\n";
                    for (const auto& [nk, d] : c.by_type)
                        out.stream() << "D[" << join_symbols(nk.canonical()) << "] = " << d << "\n";
                }
            }
            return kExitPass;
        }

        if (*exact) {
            const DiscreteDist dist = load_dist(dist_spec);
            std::ostringstream cfg;
            cfg << "cmd=exact dist=" << dist.describe() << " n=" << n << " kmax=" << kmax;
            if (!tail_spec.empty()) cfg << " tail=" << tail_spec;
            if (out.format == "json") {
                ordered_json j;
                j["config"] = cfg.str();
                j["config_hash"] = fnv1a_hash(cfg.str());
                j["expected_ck"] = ordered_json::array();
                for (int k = 1; k <= kmax; ++k)
                    j["expected_ck"].push_back({{"k", k}, {"value", expected_ck(dist, k, n)}});
                if (!tail_spec.empty())
                    j["joint_tail"] = joint_tail(dist, {parse_tail_query(tail_spec), n});
                out.stream() << j.dump(2) << "\n";
            } else {
                emit_config_header(out, cfg.str());
                if (out.format == "csv") out.stream() << "k,expected_ck\n";
                for (int k = 1; k <= kmax; ++k)
                    out.stream() << k << (out.format == "csv" ? "," : " E(c_k)=")
                                 << expected_ck(dist, k, n) << "\n";
                if (!tail_spec.empty())
                    out.stream() << "joint_tail " << joint_tail(dist, {parse_tail_query(tail_spec), n})
                                 << "\n";
            }
            return kExitPass;
        }

        if (*surgery) {
            const Sequence g = parse_symbols(input_seq);
            const Word w = parse_symbols(word_spec);
            const Sequence result = *insert ? insert_cycle(g, w) : remove_cycle(g, w);
            out.stream() << join_symbols(result) << "\n";
            return kExitPass;
        }

        if (*verify) {
            McConfig cfg;
            cfg.seed = seed;
            cfg.reps = verify_reps;
            cfg.threads = threads;
            cfg.alpha = alpha;
            std::vector<TestReport> reports;
            std::ostringstream cfgstr;
            if (*v_fixed) {
                const DiscreteDist dist = load_dist(dist_spec);
                cfgstr << "cmd=verify-small-fixed dist=" << dist.describe() << " n=" << n
                       << " kmax=" << kmax << " reps=" << verify_reps << " seed=" << seed;
                reports = verify_small_cycles_fixed(dist, n, kmax, cfg);
            } else if (*v_spread) {
                cfgstr << "cmd=verify-small-spreading q=" << q_spreading << " n=" << n
                       << " kmax=" << kmax << " reps=" << verify_reps << " seed=" << seed;
                reports = verify_small_cycles_spreading(q_spreading, n, kmax, cfg);
            } else if (*v_pd) {
                const DiscreteDist dist = load_dist(dist_spec);
                cfgstr << "cmd=verify-pd dist=" << dist.describe() << " n=" << n
                       << " t_specs=" << t_specs_str << " reps=" << verify_reps << " seed=" << seed
                       << " control=" << control;
                reports = verify_pd(dist, n, parse_t_specs(t_specs_str), cfg, control);
            } else {
                const DiscreteDist dist = load_dist(dist_spec);
                std::vector<int> grid;
                for (Symbol v : parse_symbols(ns_spec)) grid.push_back(static_cast<int>(v));
                cfgstr << "cmd=verify-clt dist=" << dist.describe() << " ns=" << ns_spec
                       << " reps=" << verify_reps << " seed=" << seed;
                reports = verify_clt(dist, grid, cfg);
            }
            return emit_reports(out, cfgstr.str(), reports);
        }

        if (*pd) {
            std::ostringstream cfg;
            cfg << "cmd=pd seed=" << seed << " reps=" << reps << " top=" << top;
            emit_config_header(out, cfg.str());
            if (out.format != "json") {
                out.stream() << "rep";
                for (int i = 1; i <= top; ++i) out.stream() << ",lambda" << i;
                out.stream() << ",m2,m3\n";
            }
            ordered_json rows = ordered_json::array();
            for (int rep = 0; rep < reps; ++rep) {
                RngStream rng(seed, static_cast<std::uint64_t>(rep));
                const SimplexVector v = sample_pd(rng);
                std::vector<double> head(top, 0.0);
                for (int i = 0; i < top && i < static_cast<int>(v.entries.size()); ++i)
                    head[i] = v.entries[i];
                if (out.format == "json") {
                    rows.push_back({{"rep", rep},
                                    {"entries", head},
                                    {"m2", m_t(v, 2).value},
                                    {"m3", m_t(v, 3).value}});
                } else {
                    out.stream() << rep;
                    for (double e : head) out.stream() << "," << e;
                    out.stream() << "," << m_t(v, 2).value << "," << m_t(v, 3).value << "\n";
                }
            }
            if (out.format == "json") {
                ordered_json j;
                j["config"] = cfg.str();
                j["config_hash"] = fnv1a_hash(cfg.str());
                j["rows"] = rows;
                out.stream() << j.dump(2) << "\n";
            }
            return kExitPass;
        }
    } catch (const InternalInvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
