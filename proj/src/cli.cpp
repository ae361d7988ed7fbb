#include "polarlens/cli.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "polarlens/dipstat.hpp"
#include "polarlens/flows.hpp"
#include "polarlens/ideology.hpp"
#include "polarlens/ingest.hpp"
#include "polarlens/manifest.hpp"
#include "polarlens/simnet.hpp"
#include "polarlens/synth.hpp"
#include "polarlens/util.hpp"

namespace polarlens {

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
    std::vector<std::string> records;
    std::vector<std::string> catalogs; // FILE or YEAR=FILE
    std::string years_range;
    int min_distinct = 3;
    std::string anchor;
    std::uint64_t seed = 0;
    std::size_t n_boot = 10000;
    std::string out;
    int jobs = 1;
};

void add_common_input_flags(CLI::App* cmd, CommonOpts& o, bool needs_out = true) {
    cmd->add_option("--records", o.records, "Record files (JSON Lines)")->required();
    cmd->add_option("--catalog", o.catalogs,
                    "Catalog CSV, either FILE for all years or YEAR=FILE (repeatable)")
        ->required();
    cmd->add_option("--years", o.years_range, "Year range A..B (default: years present)");
    cmd->add_option("--min-distinct", o.min_distinct,
                    "Minimum distinct retweeted influencers per user")
        ->capture_default_str();
    if (needs_out) cmd->add_option("--out", o.out, "Output directory")->required();
}

std::vector<int> parse_years(const std::string& range) {
    auto bad = [&] { return UsageError("bad --years '" + range + "' (expected A..B)"); };
    const auto pos = range.find("..");
    std::vector<int> years;
    try {
        if (pos == std::string::npos) {
            years.push_back(std::stoi(range));
        } else {
            const int a = std::stoi(range.substr(0, pos));
            const int b = std::stoi(range.substr(pos + 2));
            if (b < a) throw bad();
            for (int y = a; y <= b; ++y) years.push_back(y);
        }
    } catch (const std::logic_error&) {
        throw bad();
    }
    return years;
}

struct Inputs {
    std::vector<RetweetRecord> records;
    std::map<int, InfluencerCatalog> catalogs; // -1 = default for all years
    std::vector<int> years;
    std::vector<std::pair<std::string, std::string>> digests;
};

Inputs load_inputs(const CommonOpts& o) {
    Inputs in;
    for (const auto& path : o.records) {
        auto recs = parse_records_file(path);
        in.records.insert(in.records.end(), recs.begin(), recs.end());
        in.digests.emplace_back(path, fnv1a64_file_hex(path));
    }
    for (const auto& arg : o.catalogs) {
        const auto eq = arg.find('=');
        if (eq == std::string::npos) {
            if (in.catalogs.count(-1)) throw UsageError("multiple default catalogs given");
            in.catalogs.emplace(-1, parse_catalog_file(arg));
            in.digests.emplace_back(arg, fnv1a64_file_hex(arg));
        } else {
            int year = 0;
            try {
                year = std::stoi(arg.substr(0, eq));
            } catch (const std::logic_error&) {
                throw UsageError("bad --catalog '" + arg + "' (expected FILE or YEAR=FILE)");
            }
            const std::string path = arg.substr(eq + 1);
            if (in.catalogs.count(year))
                throw UsageError("multiple catalogs for year " + std::to_string(year));
            in.catalogs.emplace(year, parse_catalog_file(path));
            in.digests.emplace_back(path, fnv1a64_file_hex(path));
        }
    }
    if (!o.years_range.empty()) {
        in.years = parse_years(o.years_range);
    } else {
        std::set<int> seen;
        for (const auto& r : in.records) seen.insert(utc_year(r.timestamp));
        in.years.assign(seen.begin(), seen.end());
    }
    if (in.years.empty()) throw DataError("no years to process");
    return in;
}

const InfluencerCatalog& catalog_for(const Inputs& in, int year) {
    auto it = in.catalogs.find(year);
    if (it != in.catalogs.end()) return it->second;
    it = in.catalogs.find(-1);
    if (it != in.catalogs.end()) return it->second;
    throw DataError("no catalog for year " + std::to_string(year));
}

PartyLabel resolve_anchor(const std::string& flag, const InfluencerCatalog& catalog) {
    if (!flag.empty()) return PartyLabel(flag);
    const auto parties = catalog.parties();
    if (parties.empty()) throw DataError("catalog has no parties");
    return parties.front();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write '" + path + "'");
    f << content;
}

template <typename Fn>
void write_stream(const std::string& path, Fn&& fn) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write '" + path + "'");
    fn(f);
}

nlohmann::ordered_json common_config_json(const CommonOpts& o, const std::vector<int>& years) {
    nlohmann::ordered_json j;
    j["records"] = o.records;
    j["catalogs"] = o.catalogs;
    j["years"] = years;
    j["min_distinct"] = o.min_distinct;
    j["anchor"] = o.anchor.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(o.anchor);
    j["seed"] = o.seed;
    j["n_boot"] = o.n_boot;
    // --jobs is an execution detail like wall-clock time: it cannot change
    // any output byte, so it stays out of the manifest.
    return j;
}

// ---------------------------------------------------------------------------
// Per-year pipeline stage, shared by the focused subcommands and `pipeline`.

struct YearResult {
    int year = 0;
    bool usable = false;
    AffiliationTable affiliations;
    std::map<std::string, std::int64_t> retweeter_counts; // party -> distinct users
};

YearResult run_year(const Inputs& in, int year, const CommonOpts& o, const std::string& dir) {
    YearResult yr;
    yr.year = year;
    const InfluencerCatalog& catalog = catalog_for(in, year);
    fs::create_directories(dir);

    FilterConfig cfg;
    cfg.min_distinct_influencers = o.min_distinct;
    BuildResult br = build_interaction_matrix(in.records, catalog, year, cfg);
    write_stream(dir + "/matrix.csv", [&](std::ostream& f) { export_matrix_csv(br.matrix, f); });
    if (!br.zero_columns.empty())
        std::cerr << "warning: year " << year << ": " << br.zero_columns.size()
                  << " influencer columns became all-zero after row filtering\n";
    if (br.empty_after_filter) {
        std::cerr << "warning: year " << year << ": no retweeters survive the filter\n";
        return yr;
    }
    const InteractionMatrix& m = br.matrix;

    // Audience-similarity network, full and median-pruned.
    SimilarityGraph full = build_similarity_graph(m, catalog);
    SimilarityGraph pruned = prune_graph(full);
    write_stream(dir + "/similarity_edges_full.csv",
                 [&](std::ostream& f) { export_edges_csv(full, f); });
    write_stream(dir + "/similarity_edges.csv",
                 [&](std::ostream& f) { export_edges_csv(pruned, f); });
    write_stream(dir + "/similarity_nodes.csv",
                 [&](std::ostream& f) { export_nodes_csv(pruned, f); });
    if (!pruned.edges.empty())
        write_stream(dir + "/link_shares.csv", [&](std::ostream& f) {
            export_link_shares_csv(link_share_table(pruned, year), f);
        });

    // Direct politician-to-politician retweets.
    SimilarityGraph direct = build_direct_retweet_graph(in.records, catalog, year);
    write_stream(dir + "/direct_edges.csv", [&](std::ostream& f) { export_edges_csv(direct, f); });
    write_stream(dir + "/direct_nodes.csv", [&](std::ostream& f) { export_nodes_csv(direct, f); });
    if (!direct.edges.empty())
        write_stream(dir + "/link_shares_direct.csv", [&](std::ostream& f) {
            export_link_shares_csv(link_share_table(direct, year), f);
        });

    // Latent ideology scores and the dip of the influencer positions.
    LatentIdeology li = latent_ideology(m, resolve_anchor(o.anchor, catalog), catalog);
    write_stream(dir + "/scores.csv",
                 [&](std::ostream& f) { export_scores_csv(li.result, catalog, year, f); });
    write_file(dir + "/decomposition.json", decomposition_report_json(li, year));

    // Per-party user score rows (a user appears once under every party they
    // retweeted that year).
    write_stream(dir + "/user_party_scores.csv", [&](std::ostream& f) {
        f << "party,user_id,score\n";
        auto scores = li.result.user_score_map();
        std::map<std::string, std::set<std::string>> party_users;
        for (std::size_t j = 0; j < m.n_cols(); ++j) {
            const std::string party = catalog.at(m.col_ids()[j]).party.id;
            for (const auto& e : m.col_entries(j)) party_users[party].insert(m.row_ids()[e.row]);
        }
        for (const auto& [party, users] : party_users) {
            yr.retweeter_counts[party] = static_cast<std::int64_t>(users.size());
            for (const auto& u : users) {
                auto it = scores.find(u);
                if (it != scores.end())
                    f << party << ',' << u << ',' << format_double(it->second) << '\n';
            }
        }
    });

    std::vector<double> influencer_scores;
    for (const auto& [id, s] : li.result.influencer_scores) influencer_scores.push_back(s);
    DipResult dip = dip_test(influencer_scores, o.n_boot,
                             derive_stream(o.seed, static_cast<std::uint64_t>(year)));
    write_file(dir + "/dip_influencers.json", dip_report_json(dip));

    yr.affiliations = build_affiliations(m, catalog);
    write_stream(dir + "/affiliations.csv",
                 [&](std::ostream& f) { export_affiliations_csv(yr.affiliations, f); });
    yr.usable = true;
    return yr;
}

void write_cross_year(const std::vector<YearResult>& years, const std::string& out) {
    std::vector<FlowTable> flows;
    for (std::size_t i = 0; i + 1 < years.size(); ++i)
        if (years[i].usable && years[i + 1].usable)
            flows.push_back(flow_matrix(years[i].affiliations, years[i + 1].affiliations));
    write_stream(out + "/flows.csv", [&](std::ostream& f) { export_flows_csv(flows, f); });

    std::map<std::pair<std::string, int>, std::int64_t> dominant, retweeter;
    for (const auto& yr : years) {
        if (!yr.usable) continue;
        for (const auto& [user, val] : yr.affiliations.assignments)
            dominant[{val.first.id, yr.year}] += 1;
        for (const auto& [party, count] : yr.retweeter_counts)
            retweeter[{party, yr.year}] = count;
    }
    write_stream(out + "/growth.csv", [&](std::ostream& f) {
        export_growth_csv(growth_rates(dominant), growth_rates(retweeter), f);
    });
}

void run_years_parallel(const Inputs& in, const CommonOpts& o, std::vector<YearResult>& results) {
    results.resize(in.years.size());
    const int jobs = std::max(1, std::min<int>(o.jobs, static_cast<int>(in.years.size())));
    if (jobs == 1) {
        for (std::size_t i = 0; i < in.years.size(); ++i)
            results[i] = run_year(in, in.years[i], o, o.out + "/" + std::to_string(in.years[i]));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(jobs);
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < in.years.size();
                     i = next.fetch_add(1)) {
                    results[i] =
                        run_year(in, in.years[i], o, o.out + "/" + std::to_string(in.years[i]));
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

int cmd_ingest(const CommonOpts& o) {
    Inputs in = load_inputs(o);
    FilterConfig cfg;
    cfg.min_distinct_influencers = o.min_distinct;
    fs::create_directories(o.out);
    for (int year : in.years) {
        BuildResult br = build_interaction_matrix(in.records, catalog_for(in, year), year, cfg);
        const std::string dir = o.out + "/" + std::to_string(year);
        fs::create_directories(dir);
        write_stream(dir + "/matrix.csv",
                     [&](std::ostream& f) { export_matrix_csv(br.matrix, f); });
        std::cout << year << ": " << br.matrix.n_rows() << " users x " << br.matrix.n_cols()
                  << " influencers, " << br.matrix.n_entries() << " entries, "
                  << br.rows_dropped << " users filtered, " << br.zero_columns.size()
                  << " zero columns\n";
    }
    RunManifest man{"ingest", common_config_json(o, in.years), in.digests, {o.seed}};
    man.write(o.out);
    return 0;
}

int cmd_simnet(const CommonOpts& o, bool direct, bool no_prune) {
    Inputs in = load_inputs(o);
    FilterConfig cfg;
    cfg.min_distinct_influencers = o.min_distinct;
    fs::create_directories(o.out);
    for (int year : in.years) {
        const InfluencerCatalog& catalog = catalog_for(in, year);
        const std::string dir = o.out + "/" + std::to_string(year);
        fs::create_directories(dir);
        SimilarityGraph g;
        if (direct) {
            g = build_direct_retweet_graph(in.records, catalog, year);
        } else {
            BuildResult br = build_interaction_matrix(in.records, catalog, year, cfg);
            if (br.empty_after_filter) {
                std::cerr << "warning: year " << year << " is empty after filtering\n";
                continue;
            }
            g = build_similarity_graph(br.matrix, catalog);
            if (!no_prune) g = prune_graph(g);
        }
        write_stream(dir + "/edges.csv", [&](std::ostream& f) { export_edges_csv(g, f); });
        write_stream(dir + "/nodes.csv", [&](std::ostream& f) { export_nodes_csv(g, f); });
        if (!g.edges.empty())
            write_stream(dir + "/link_shares.csv", [&](std::ostream& f) {
                export_link_shares_csv(link_share_table(g, year), f);
            });
    }
    auto cfgj = common_config_json(o, in.years);
    cfgj["direct"] = direct;
    cfgj["no_prune"] = no_prune;
    RunManifest man{"simnet", cfgj, in.digests, {o.seed}};
    man.write(o.out);
    return 0;
}

int cmd_ideology(const CommonOpts& o) {
    Inputs in = load_inputs(o);
    FilterConfig cfg;
    cfg.min_distinct_influencers = o.min_distinct;
    fs::create_directories(o.out);
    for (int year : in.years) {
        const InfluencerCatalog& catalog = catalog_for(in, year);
        BuildResult br = build_interaction_matrix(in.records, catalog, year, cfg);
        if (br.empty_after_filter) {
            std::cerr << "warning: year " << year << " is empty after filtering\n";
            continue;
        }
        LatentIdeology li = latent_ideology(br.matrix, resolve_anchor(o.anchor, catalog), catalog);
        const std::string dir = o.out + "/" + std::to_string(year);
        fs::create_directories(dir);
        write_stream(dir + "/scores.csv",
                     [&](std::ostream& f) { export_scores_csv(li.result, catalog, year, f); });
        write_file(dir + "/decomposition.json", decomposition_report_json(li, year));
    }
    RunManifest man{"ideology", common_config_json(o, in.years), in.digests, {o.seed}};
    man.write(o.out);
    return 0;
}

int cmd_flows(const CommonOpts& o) {
    Inputs in = load_inputs(o);
    FilterConfig cfg;
    cfg.min_distinct_influencers = o.min_distinct;
    fs::create_directories(o.out);
    std::vector<YearResult> years;
    for (int year : in.years) {
        const InfluencerCatalog& catalog = catalog_for(in, year);
        BuildResult br = build_interaction_matrix(in.records, catalog, year, cfg);
        YearResult yr;
        yr.year = year;
        if (!br.empty_after_filter) {
            yr.usable = true;
            yr.affiliations = build_affiliations(br.matrix, catalog);
            const std::string dir = o.out + "/" + std::to_string(year);
            fs::create_directories(dir);
            write_stream(dir + "/affiliations.csv",
                         [&](std::ostream& f) { export_affiliations_csv(yr.affiliations, f); });
            const InteractionMatrix& m = br.matrix;
            std::map<std::string, std::set<std::string>> party_users;
            for (std::size_t j = 0; j < m.n_cols(); ++j) {
                const std::string party = catalog.at(m.col_ids()[j]).party.id;
                for (const auto& e : m.col_entries(j))
                    party_users[party].insert(m.row_ids()[e.row]);
            }
            for (const auto& [party, users] : party_users)
                yr.retweeter_counts[party] = static_cast<std::int64_t>(users.size());
        }
        years.push_back(std::move(yr));
    }
    write_cross_year(years, o.out);
    RunManifest man{"flows", common_config_json(o, in.years), in.digests, {o.seed}};
    man.write(o.out);
    return 0;
}

struct DipOpts {
    std::string scores_file;
    std::string kind = "influencer";
    std::string party;
    std::size_t n_boot = 10000;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_dip(const DipOpts& o) {
    std::ifstream f(o.scores_file);
    if (!f) throw DataError("cannot open '" + o.scores_file + "'");
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(f, line)) throw DataError("empty scores file");
    ++lineno;
    strip_trailing_cr(line);
    if (line != "id,kind,party,score,year")
        throw ParseError(lineno, "bad scores header '" + line + "'");
    std::vector<double> sample;
    while (std::getline(f, line)) {
        ++lineno;
        strip_trailing_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 5) throw ParseError(lineno, "expected 5 fields");
        if (fields[1] != o.kind) continue;
        if (!o.party.empty() && fields[2] != o.party) continue;
        try {
            sample.push_back(std::stod(fields[3]));
        } catch (const std::logic_error&) {
            throw ParseError(lineno, "bad score '" + fields[3] + "'");
        }
    }
    DipResult res = dip_test(sample, o.n_boot, o.seed);
    const std::string report = dip_report_json(res);
    std::cout << report;
    if (!o.out.empty()) {
        fs::create_directories(o.out);
        write_file(o.out + "/dip.json", report);
        nlohmann::ordered_json cfg;
        cfg["scores"] = o.scores_file;
        cfg["kind"] = o.kind;
        cfg["party"] = o.party;
        cfg["n_boot"] = o.n_boot;
        cfg["seed"] = o.seed;
        RunManifest man{"dip", cfg, {{o.scores_file, fnv1a64_file_hex(o.scores_file)}}, {o.seed}};
        man.write(o.out);
    }
    return 0;
}

SynthConfig synth_config_from_json(const nlohmann::json& j) {
    SynthConfig cfg;
    if (!j.contains("parties") || !j.contains("years"))
        throw DataError("synth config needs 'parties' and 'years'");
    for (const auto& p : j.at("parties")) {
        SynthParty sp;
        sp.label = PartyLabel(p.at("label").get<std::string>());
        sp.n_influencers = p.value("influencers", 0);
        sp.n_users = p.value("users", 0);
        sp.bloc = p.value("bloc", 0);
        cfg.parties.push_back(std::move(sp));
    }
    cfg.epsilon = j.value("epsilon", 0.05);
    cfg.within_bloc_cross_party = j.value("within_bloc_cross_party", 0.0);
    cfg.retweets_per_user_mean = j.value("retweets_per_user_mean", 8.0);
    cfg.influencer_retweets_mean = j.value("influencer_retweets_mean", 0.0);
    cfg.min_distinct_guarantee = j.value("min_distinct_guarantee", 3);
    cfg.seed = j.value("seed", 0ULL);
    for (const auto& y : j.at("years")) {
        SynthYear sy;
        sy.year = y.at("year").get<int>();
        if (y.contains("epsilon")) sy.epsilon_override = y["epsilon"].get<double>();
        if (y.contains("within_bloc_cross_party"))
            sy.within_bloc_cross_override = y["within_bloc_cross_party"].get<double>();
        if (y.contains("defections"))
            for (const auto& d : y["defections"])
                sy.defections.push_back({d.at("influencer").get<std::string>(),
                                         PartyLabel(d.at("to").get<std::string>())});
        if (y.contains("user_switches"))
            for (const auto& s : y["user_switches"])
                sy.user_switches.push_back({PartyLabel(s.at("from").get<std::string>()),
                                            PartyLabel(s.at("to").get<std::string>()),
                                            s.at("count").get<int>()});
        cfg.years.push_back(std::move(sy));
    }
    return cfg;
}

int cmd_synth(const std::string& config_path, const std::string& out, std::uint64_t seed,
              bool seed_given) {
    std::ifstream f(config_path);
    if (!f) throw DataError("cannot open '" + config_path + "'");
    nlohmann::json j = nlohmann::json::parse(f, nullptr, false);
    if (j.is_discarded()) throw DataError("invalid JSON in '" + config_path + "'");
    SynthConfig cfg = synth_config_from_json(j);
    if (seed_given) cfg.seed = seed;
    SynthOutput so = generate(cfg);
    write_corpus(so, out);
    nlohmann::ordered_json cfgj;
    cfgj["config_file"] = config_path;
    cfgj["seed"] = cfg.seed;
    RunManifest man{"synth", cfgj, {{config_path, fnv1a64_file_hex(config_path)}}, {cfg.seed}};
    man.write(out);
    std::cout << "generated " << so.years.size() << " years under " << out << "\n";
    return 0;
}

int cmd_pipeline(const CommonOpts& o) {
    Inputs in = load_inputs(o);
    fs::create_directories(o.out);
    std::vector<YearResult> years;
    run_years_parallel(in, o, years);
    write_cross_year(years, o.out);
    RunManifest man{"pipeline", common_config_json(o, in.years), in.digests, {o.seed}};
    man.write(o.out);
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"polarlens: audience-similarity networks, latent ideology, dip-test "
                 "polarization and affiliation flows over retweet logs"};
    app.require_subcommand(1);

    CommonOpts ingest_o, simnet_o, ideology_o, flows_o, pipeline_o;
    bool simnet_direct = false, simnet_no_prune = false;
    DipOpts dip_o;
    std::string synth_config, synth_out;
    std::uint64_t synth_seed = 0;

    auto* c_ingest = app.add_subcommand("ingest", "Validate records and export count matrices");
    add_common_input_flags(c_ingest, ingest_o);

    auto* c_simnet = app.add_subcommand("simnet", "Build influencer similarity or direct graphs");
    add_common_input_flags(c_simnet, simnet_o);
    c_simnet->add_flag("--direct", simnet_direct, "Direct retweet graph instead of similarity");
    c_simnet->add_flag("--no-prune", simnet_no_prune, "Skip median-threshold pruning");

    auto* c_ideology = app.add_subcommand("ideology", "Latent ideology scores per year");
    add_common_input_flags(c_ideology, ideology_o);
    c_ideology->add_option("--anchor", ideology_o.anchor, "Party kept on the negative side");

    auto* c_dip = app.add_subcommand("dip", "Dip test over a scores file");
    c_dip->add_option("--scores", dip_o.scores_file, "scores.csv from the ideology stage")
        ->required();
    c_dip->add_option("--kind", dip_o.kind, "user or influencer")->capture_default_str();
    c_dip->add_option("--party", dip_o.party, "Restrict to one party (influencers)");
    c_dip->add_option("--n-boot", dip_o.n_boot, "Bootstrap replicates")->capture_default_str();
    c_dip->add_option("--seed", dip_o.seed, "Bootstrap seed")->capture_default_str();
    c_dip->add_option("--out", dip_o.out, "Optional output directory");

    auto* c_flows = app.add_subcommand("flows", "Affiliations, year-over-year flows, growth");
    add_common_input_flags(c_flows, flows_o);

    auto* c_synth = app.add_subcommand("synth", "Generate a planted-bloc corpus");
    c_synth->add_option("--config", synth_config, "Synth config JSON")->required();
    c_synth->add_option("--out", synth_out, "Output directory")->required();
    auto* seed_opt = c_synth->add_option("--seed", synth_seed, "Override the config seed");

    auto* c_pipeline =
        app.add_subcommand("pipeline", "Full multi-year analysis: graphs, scores, dips, flows");
    add_common_input_flags(c_pipeline, pipeline_o);
    c_pipeline->add_option("--anchor", pipeline_o.anchor, "Party kept on the negative side");
    c_pipeline->add_option("--seed", pipeline_o.seed, "Seed for dip bootstraps")
        ->capture_default_str();
    c_pipeline->add_option("--n-boot", pipeline_o.n_boot, "Bootstrap replicates")
        ->capture_default_str();
    c_pipeline->add_option("--jobs", pipeline_o.jobs, "Parallel year workers")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << app.help();
        return 1;
    }

    const auto started = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (c_ingest->parsed()) rc = cmd_ingest(ingest_o);
        else if (c_simnet->parsed()) rc = cmd_simnet(simnet_o, simnet_direct, simnet_no_prune);
        else if (c_ideology->parsed()) rc = cmd_ideology(ideology_o);
        else if (c_dip->parsed()) rc = cmd_dip(dip_o);
        else if (c_flows->parsed()) rc = cmd_flows(flows_o);
        else if (c_synth->parsed())
            rc = cmd_synth(synth_config, synth_out, synth_seed, seed_opt->count() > 0);
        else if (c_pipeline->parsed()) rc = cmd_pipeline(pipeline_o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              started);
    std::cerr << "done in " << elapsed.count() << " ms\n";
    return rc;
}

} // namespace polarlens
