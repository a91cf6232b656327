// Command-line front end: dataset generation, transformation, index
// construction, maximal-object queries, ranking, evaluation, benchmark
// sweeps and self-audits.

#include <filesystem>
#include <iostream>
#include <map>
#include <random>

#include "CLI11.hpp"
#include "gcp/axioms.hpp"
#include "gcp/dataset_io.hpp"
#include "gcp/experiment.hpp"
#include "gcp/synthetic.hpp"

namespace fs = std::filesystem;
using namespace gcp;

namespace {

std::string default_data_dir() {
    const char* env = std::getenv("GCP_DATA_DIR");
    return env ? env : ".";
}

struct DataArgs {
    std::string dir;
    std::vector<std::string> hierarchy_paths;
    std::string objects_path;
    std::string users_path;
    bool lexicographic = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--data-dir", dir, "directory with *.hier, objects.csv, users.csv")
            ->default_val(default_data_dir());
        cmd->add_option("--hierarchy", hierarchy_paths, "hierarchy file (repeatable)");
        cmd->add_option("--objects", objects_path, "objects CSV");
        cmd->add_option("--users", users_path, "users CSV");
        cmd->add_flag("--lexicographic", lexicographic, "force lexicographic child order");
    }

    Dataset load(bool need_users = true) const {
        ParseOptions opts;
        opts.lexicographic_children = lexicographic;
        Dataset ds;
        if (!hierarchy_paths.empty()) {
            ds.attributes = load_hierarchies(hierarchy_paths, opts);
        } else {
            std::vector<std::string> paths;
            for (const auto& entry : fs::directory_iterator(dir)) {
                if (entry.path().extension() == ".hier") paths.push_back(entry.path().string());
            }
            std::sort(paths.begin(), paths.end());
            if (paths.empty()) throw ParseError(dir + ": no .hier files found");
            ds.attributes = load_hierarchies(paths, opts);
        }
        std::string opath = objects_path.empty() ? (fs::path(dir) / "objects.csv").string()
                                                 : objects_path;
        load_objects_csv(ds, read_file(opath), opath);
        if (need_users) {
            std::string upath =
                users_path.empty() ? (fs::path(dir) / "users.csv").string() : users_path;
            load_users_csv(ds, read_file(upath), upath);
        }
        ds.validate();
        return ds;
    }
};

std::vector<std::size_t> parse_sweep_values(const std::string& text) {
    // "a..b" doubles from a to b; "v1,v2,v3" lists explicitly.
    std::vector<std::size_t> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        std::size_t lo = std::stoull(text.substr(0, dots));
        std::size_t hi = std::stoull(text.substr(dots + 2));
        for (std::size_t v = lo; v <= hi; v *= 2) out.push_back(v);
        return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string tok =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        if (!tok.empty()) out.push_back(std::stoull(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void apply_point(SyntheticConfig& cfg, const std::string& key, std::size_t value) {
    if (key == "objects") {
        cfg.num_objects = value;
    } else if (key == "attrs") {
        cfg.num_attributes = value;
    } else if (key == "users") {
        cfg.group_size = value;
    } else if (key == "height") {
        cfg.hierarchy_height = value;
    } else if (key == "object-level") {
        cfg.object_level = value;
    } else if (key == "user-level") {
        cfg.user_level = value;
    } else {
        throw CLI::ValidationError("unknown sweep parameter '" + key + "'");
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{"group categorical preference engine"};
    app.require_subcommand(1);

    // --- gen ---------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
    SyntheticConfig gen_cfg;
    std::string gen_out = ".";
    gen->add_option("--objects", gen_cfg.num_objects)->default_val(100000);
    gen->add_option("--attrs", gen_cfg.num_attributes)->default_val(4);
    gen->add_option("--users", gen_cfg.group_size)->default_val(8);
    gen->add_option("--height", gen_cfg.hierarchy_height)->default_val(8);
    gen->add_option("--object-level", gen_cfg.object_level)->default_val(1);
    gen->add_option("--user-level", gen_cfg.user_level)->default_val(2);
    gen->add_option("--seed", gen_cfg.seed)->default_val(1);
    gen->add_option("--out-dir", gen_out, "output directory")->required();
    gen->callback([&] {
        Dataset ds = gen_synthetic(gen_cfg);
        fs::create_directories(gen_out);
        for (std::size_t k = 0; k < ds.attributes.size(); ++k) {
            write_file((fs::path(gen_out) / (ds.attributes[k].name + ".hier")).string(),
                       serialize_hierarchy(ds.attributes[k].hierarchy));
        }
        write_file((fs::path(gen_out) / "objects.csv").string(), serialize_objects_csv(ds));
        write_file((fs::path(gen_out) / "users.csv").string(), serialize_users_csv(ds));
    });

    // --- transform ----------------------------------------------------
    auto* tr = app.add_subcommand("transform", "dump interval rectangles for all objects");
    DataArgs tr_data;
    tr_data.attach(tr);
    tr->callback([&] {
        Dataset ds = tr_data.load(false);
        std::cout << "# gcp-rects v1\n";
        std::cout << "object_id,virtual";
        for (const auto& a : ds.attributes) std::cout << ',' << a.name << "_lo," << a.name << "_hi";
        std::cout << '\n';
        for (const auto& o : ds.objects) {
            std::vector<Rect> rects = transform(ds, o);
            for (std::size_t v = 0; v < rects.size(); ++v) {
                std::cout << o.id << ',' << v;
                for (const auto& iv : rects[v].ranges) std::cout << ',' << iv.lo << ',' << iv.hi;
                std::cout << '\n';
            }
        }
    });

    // --- index ---------------------------------------------------------
    auto* ix = app.add_subcommand("index", "build and persist the object index");
    DataArgs ix_data;
    ix_data.attach(ix);
    std::string ix_out;
    std::size_t ix_capacity = 64;
    bool ix_rstar = false;
    std::vector<std::size_t> ix_attrs;
    ix->add_option("--out", ix_out, "index dump path")->required();
    ix->add_option("--capacity", ix_capacity, "node capacity");
    ix->add_flag("--insert-build", ix_rstar, "classical insert build instead of bulk load");
    ix->add_option("--attr-subset", ix_attrs, "indexed attribute positions (subspace mode)");
    ix->callback([&] {
        Dataset ds = ix_data.load(false);
        RTreeConfig cfg;
        cfg.capacity = ix_capacity;
        cfg.build = ix_rstar ? RTreeConfig::Build::kInsert : RTreeConfig::Build::kBulkLoad;
        RTree tree = RTree::build(ds, ix_attrs, cfg);
        write_file(ix_out, tree.dump());
    });

    // --- gmco / pgmco ---------------------------------------------------
    auto add_query = [&](const std::string& name, const std::string& what, bool relaxed) {
        auto* q = app.add_subcommand(name, what);
        auto data = std::make_shared<DataArgs>();
        data->attach(q);
        auto algo = std::make_shared<std::string>(relaxed ? "p-ind" : "ind");
        auto p_text = std::make_shared<std::string>("100");
        auto sim = std::make_shared<std::string>("jaccard");
        auto index_path = std::make_shared<std::string>();
        auto report_path = std::make_shared<std::string>();
        auto format = std::make_shared<std::string>("csv");
        q->add_option("--algo", *algo, relaxed ? "p-ind | p-bsl-bnl | p-bsl-sfs | p-bsl-bbs | p-brute"
                                               : "ind | bsl-bnl | bsl-sfs | bsl-bbs | brute");
        if (relaxed) q->add_option("--p", *p_text, "agreement percentage in (0,100]")->required();
        q->add_option("--similarity", *sim, "jaccard | overlap | dice");
        q->add_option("--index", *index_path, "prebuilt index dump to load");
        q->add_option("--report", *report_path, "write a run report");
        q->add_option("--format", *format, "csv | jsonlines");
        q->callback([=] {
            Dataset ds = data->load();
            ExperimentParams params;
            params.algorithm = *algo;
            params.match.similarity = similarity_from_name(*sim);
            if (relaxed) params.p = Percent::parse(*p_text);
            RTree tree;
            const RTree* tree_ptr = nullptr;
            if (!index_path->empty()) {
                tree = RTree::load(read_file(*index_path), ds);
                tree_ptr = &tree;
            }
            ExperimentOutput out = run_experiment(ds, params, tree_ptr);
            for (std::size_t i : out.result) std::cout << ds.objects[i].id << '\n';
            if (!report_path->empty()) {
                write_file(*report_path,
                           serialize_reports({out.report}, report_format_from_name(*format)));
            }
        });
    };
    add_query("gmco", "collectively maximal objects", false);
    add_query("pgmco", "relaxed collectively maximal objects", true);

    // --- rank ------------------------------------------------------------
    auto* rk = app.add_subcommand("rank", "tier ranking of the maximal objects");
    DataArgs rk_data;
    rk_data.attach(rk);
    std::string rk_sim = "jaccard";
    rk->add_option("--similarity", rk_sim);
    rk->callback([&] {
        Dataset ds = rk_data.load();
        ExperimentParams params;
        params.algorithm = "rank-cm";
        params.match.similarity = similarity_from_name(rk_sim);
        ExperimentOutput out = run_experiment(ds, params);
        for (const auto& [tau, members] : out.ranks->tiers) {
            std::cout << tau << ':';
            for (std::size_t o : members) std::cout << ' ' << ds.objects[o].id;
            std::cout << '\n';
        }
    });

    // --- eval --------------------------------------------------------------
    auto* ev = app.add_subcommand("eval", "precision / footrule against a ground-truth list");
    DataArgs ev_data;
    ev_data.attach(ev);
    std::string ev_truth;
    std::vector<std::size_t> ev_ks{10};
    std::string ev_out;
    ev->add_option("--truth", ev_truth, "ranked ground-truth list, one id per line")->required();
    ev->add_option("--k", ev_ks, "cutoffs (repeatable)")->delimiter(',');
    ev->add_option("--out", ev_out, "write the evaluation table here instead of stdout");
    ev->callback([&] {
        Dataset ds = ev_data.load();
        std::vector<std::size_t> truth = load_ranked_list(ds, read_file(ev_truth), ev_truth);
        DegreeTable table = DegreeTable::compute(ds);
        DominanceJudge judge(table);
        std::ostringstream os;
        os << "# gcp-eval v1\n";
        os << "strategy,group_size,k,precision,footrule\n";
        auto emit = [&](const std::string& name, const std::vector<std::size_t>& order) {
            for (std::size_t k : ev_ks) {
                os << name << ',' << ds.users.size() << ',' << k << ','
                   << precision_at_k(order, truth, k) << ',' << spearman_footrule(order, truth, k)
                   << '\n';
            }
        };
        RankResult ranks = rank_cm(judge, bsl(judge, InnerSkyline::kBnl, SkylineConfig{}));
        emit("rank-cm", ranks.flat_order());
        for (const auto& [name, strat] : strategy_catalog()) {
            emit(name, strategy_rank(table, {strat, 0.5}));
        }
        if (ev_out.empty()) {
            std::cout << os.str();
        } else {
            write_file(ev_out, os.str());
        }
    });

    // --- bench ----------------------------------------------------------
    auto* bn = app.add_subcommand("bench", "synthetic parameter sweeps");
    std::vector<std::string> bn_sweeps;
    std::vector<std::string> bn_algos{"ind", "bsl-bnl", "bsl-sfs", "bsl-bbs"};
    SyntheticConfig bn_base;
    bn_base.num_objects = 10000;
    std::size_t bn_runs = 3;
    std::string bn_out;
    std::string bn_format = "csv";
    std::string bn_p = "30";
    bn->add_option("--sweep", bn_sweeps, "parameter sweep, e.g. users=2..32 or objects=1000,5000");
    bn->add_option("--algos", bn_algos, "algorithms to run per point")->delimiter(',');
    bn->add_option("--objects", bn_base.num_objects);
    bn->add_option("--attrs", bn_base.num_attributes);
    bn->add_option("--users", bn_base.group_size);
    bn->add_option("--height", bn_base.hierarchy_height);
    bn->add_option("--object-level", bn_base.object_level);
    bn->add_option("--user-level", bn_base.user_level);
    bn->add_option("--seed", bn_base.seed);
    bn->add_option("--p", bn_p, "percentage for the relaxed algorithms");
    bn->add_option("--runs", bn_runs, "repeats per point");
    bn->add_option("--out", bn_out, "report path (stdout otherwise)");
    bn->add_option("--format", bn_format, "csv | jsonlines");
    bn->callback([&] {
        struct Point {
            std::string key;
            std::size_t value;
        };
        std::vector<std::vector<Point>> axes;
        for (const auto& sweep : bn_sweeps) {
            auto eq = sweep.find('=');
            if (eq == std::string::npos) {
                throw CLI::ValidationError("sweep must look like name=values");
            }
            std::string key = sweep.substr(0, eq);
            std::vector<Point> axis;
            for (std::size_t v : parse_sweep_values(sweep.substr(eq + 1))) {
                axis.push_back({key, v});
            }
            axes.push_back(std::move(axis));
        }
        if (axes.empty()) axes.push_back({{"", 0}});

        std::vector<RunReport> reports;
        std::vector<std::size_t> cursor(axes.size(), 0);
        bool done = false;
        while (!done) {
            SyntheticConfig cfg = bn_base;
            for (std::size_t a = 0; a < axes.size(); ++a) {
                const Point& pt = axes[a][cursor[a]];
                if (!pt.key.empty()) apply_point(cfg, pt.key, pt.value);
            }
            Dataset ds = gen_synthetic(cfg);
            RTree tree = RTree::build(ds, {});
            for (const auto& algo : bn_algos) {
                ExperimentParams params;
                params.algorithm = algo;
                params.p = Percent::parse(bn_p);
                params.seed = cfg.seed;
                ExperimentOutput out = run_averaged(ds, params, bn_runs, &tree);
                out.report.config = {
                    {"objects", std::to_string(cfg.num_objects)},
                    {"attrs", std::to_string(cfg.num_attributes)},
                    {"users", std::to_string(cfg.group_size)},
                    {"height", std::to_string(cfg.hierarchy_height)},
                    {"object_level", std::to_string(cfg.object_level)},
                    {"user_level", std::to_string(cfg.user_level)},
                };
                reports.push_back(out.report);
            }
            // Advance the mixed-radix cursor.
            std::size_t a = 0;
            for (; a < axes.size(); ++a) {
                if (++cursor[a] < axes[a].size()) break;
                cursor[a] = 0;
            }
            done = a == axes.size();
        }
        std::string text = serialize_reports(reports, report_format_from_name(bn_format));
        if (bn_out.empty()) {
            std::cout << text;
        } else {
            write_file(bn_out, text);
        }
    });

    // --- audit -----------------------------------------------------------
    auto* au = app.add_subcommand("audit", "bound soundness and oracle cross-checks");
    std::uint64_t au_seed = 1;
    std::size_t au_instances = 10;
    std::size_t au_trials = 200;
    au->add_option("--seed", au_seed);
    au->add_option("--instances", au_instances, "random datasets for the equivalence checks");
    au->add_option("--axiom-trials", au_trials, "trials per ranking property");
    au->callback([&] {
        bool ok = true;
        std::mt19937_64 rng(au_seed);
        for (std::size_t t = 0; t < au_instances; ++t) {
            SyntheticConfig cfg;
            cfg.num_objects = 200 + bounded_rand(rng, 300);
            cfg.num_attributes = 1 + bounded_rand(rng, 4);
            cfg.group_size = 1 + bounded_rand(rng, 6);
            cfg.hierarchy_height = 3 + bounded_rand(rng, 4);
            cfg.object_level = 1 + bounded_rand(rng, 2);
            cfg.user_level = 1 + bounded_rand(rng, cfg.hierarchy_height);
            cfg.seed = rng();
            Dataset ds = gen_synthetic(cfg);
            RTree tree = RTree::build(ds, {});
            AuditReport bounds = audit_bounds(tree, ds);
            DegreeTable table = DegreeTable::compute(ds);
            DominanceJudge judge(table);
            auto expect = brute_force_cm(judge);
            IndResult via_index = ind(tree, ds, nullptr);
            std::sort(via_index.cm.begin(), via_index.cm.end());
            auto via_bsl = bsl(judge, InnerSkyline::kBnl, SkylineConfig{});
            bool pass = bounds.clean() && via_index.cm == expect && via_bsl == expect;
            std::cout << "instance " << t << ": " << (pass ? "ok" : "MISMATCH") << '\n';
            ok &= pass;
        }
        AxiomConfig acfg;
        acfg.seed = au_seed;
        acfg.trials = au_trials;
        AxiomReport axioms = axiom_suite(acfg);
        for (const auto& s : axioms.suites) {
            std::cout << "property " << s.name << ": "
                      << (s.violations.empty() ? "ok" : "VIOLATED") << '\n';
            ok &= s.violations.empty();
        }
        if (!ok) throw CLI::RuntimeError("audit failed", 2);
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
