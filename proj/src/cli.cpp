#include "khull/cli.hpp"

#include "khull/body_io.hpp"
#include "khull/experiments.hpp"
#include "khull/hull_engine.hpp"
#include "khull/poisson.hpp"
#include "khull/zero_cell.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace khull::cli {
namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io::ParseError(path, "cannot open file");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ConvexBody read_body(const std::string& path) {
    const std::string text = read_file(path);
    io::json j;
    try {
        j = io::json::parse(text);
    } catch (const io::json::parse_error& e) {
        throw io::ParseError(path, e.what());
    }
    try {
        return io::body_from_json(j);
    } catch (const io::ParseError& e) {
        throw io::ParseError(path + ": " + e.field(), std::string(e.what()).substr(e.field().size() + 2));
    }
}

PointList read_points(const std::string& path, int dim) {
    PointList pts;
    try {
        pts = io::read_points_csv(read_file(path));
    } catch (const io::ParseError& e) {
        throw io::ParseError(path + ": " + e.field(), std::string(e.what()).substr(e.field().size() + 2));
    }
    if (dim > 0)
        for (const Vec& p : pts)
            if (p.size() != dim)
                throw io::ParseError(path, "points have " + std::to_string(p.size()) + " columns, expected " +
                                               std::to_string(dim));
    return pts;
}

io::json points_json(const PointList& pts) {
    io::json a = io::json::array();
    for (const Vec& p : pts) a.push_back(io::to_json(p));
    return a;
}

/// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_atomic(path, text);
}

std::string csv_with_hash(const std::string& hash, const std::string& csv) { return "# config_hash=" + hash + "\n" + csv; }

int resolve_threads(int t) {
    if (t > 0) return t;
    return std::max(1u, std::thread::hardware_concurrency());
}

bool is_centered_ball(const ConvexBody& K) {
    const Ball* b = K.get_if<Ball>();
    return b && (b->center.size() == 0 || b->center.norm() == 0.0);
}

io::json hull_rep_json(const HullResult& h) {
    return std::visit(
        [](const auto& rep) -> io::json {
            using T = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<T, Polytope>) {
                if (rep.is_empty()) return {{"kind", "empty"}, {"dim", rep.dim()}};
                return io::to_json(ConvexBody(rep));
            } else if constexpr (std::is_same_v<T, PolyhedralCone>) {
                return io::to_json(ConvexBody(rep));
            } else if constexpr (std::is_same_v<T, BallHull>) {
                return {{"kind", "ball_hull"},
                        {"dim", rep.dim()},
                        {"radius", rep.radius()},
                        {"points", points_json(rep.points())},
                        {"accuracy", rep.accuracy()},
                        {"feasible_empty", rep.feasible_empty()}};
            } else if constexpr (std::is_same_v<T, ConeBall>) {
                return {{"kind", "cone_ball"}, {"cone", io::to_json(ConvexBody(rep.cone))}, {"radius", rep.radius}};
            } else if constexpr (std::is_same_v<T, MembershipOracle>) {
                return {{"kind", "membership_oracle"}, {"dim", rep.dim}};
            } else {
                return {{"kind", "whole_space"}, {"dim", rep.dim}};
            }
        },
        h.rep);
}

const char* verdict_name(MembershipAnswer::Verdict v) {
    switch (v) {
        case MembershipAnswer::Verdict::Inside: return "inside";
        case MembershipAnswer::Verdict::Outside: return "outside";
        default: return "unknown";
    }
}

io::json mat_json(const Mat& m) {
    io::json rows = io::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(io::to_json(Vec(m.row(i).transpose())));
    return rows;
}

struct HullOptions {
    std::string body, points, family, query, out;
    int starts = 64;
    int evaluations = 4000;
    std::uint64_t seed = 1;
};

int run_hull(const HullOptions& o, std::ostream& out) {
    const ConvexBody K = read_body(o.body);
    const int d = K.dim();
    const PointList A = read_points(o.points, d);
    if (A.empty()) throw io::ParseError(o.points, "no points");
    HullFamily H;
    try {
        H = HullFamily::from_name(o.family);
    } catch (const std::invalid_argument& e) {
        throw io::ParseError("--family", e.what());
    }
    const PointList Q = o.query.empty() ? PointList{} : read_points(o.query, d);

    io::json config{{"command", "hull"}, {"body", io::to_json(K)}, {"family", o.family}, {"points", points_json(A)}};
    io::json result;
    result["family"] = o.family;
    result["config_hash"] = config_hash(config);

    std::optional<HullResult> closed;
    const std::string& f = o.family;
    if (f == "k-hull") closed = k_hull_translations(K, A);
    else if (f == "translations-scalings" && (K.kind() == BodyKind::Polytope || K.kind() == BodyKind::Ball))
        closed = hull_translations_scalings(K, A);
    else if (f == "full-affine" || f == "similarities") closed = hull_full_affine(A);
    else if (f == "linear" && is_centered_ball(K)) closed = hull_linear_ball(A);
    else if (f == "rotations" && K.kind() == BodyKind::HalfSpace && K.as<HalfSpace>().offset == 0.0)
        closed = positive_hull(A);
    else if (f == "rotations" && K.kind() == BodyKind::HalfBall && K.as<HalfBall>().radius == 1.0)
        closed = spherical_hull_halfball(A);

    if (closed) {
        result["method"] = "closed-form";
        result["exact"] = closed->exact;
        result["error"] = closed->error;
        result["hull"] = hull_rep_json(*closed);
        if (!Q.empty()) {
            io::json qs = io::json::array();
            for (const Vec& z : Q) qs.push_back({{"point", io::to_json(z)}, {"inside", closed->contains(z)}});
            result["queries"] = qs;
        }
    } else {
        if (Q.empty()) throw io::ParseError("--query", "family '" + f + "' on this body has no closed form; pass query points");
        result["method"] = "search";
        result["exact"] = false;
        result["hull"] = {{"kind", "membership_oracle"}, {"dim", d}};
        const SearchBudget budget{o.starts, o.evaluations, o.seed};
        io::json qs = io::json::array();
        for (const Vec& z : Q) {
            const MembershipAnswer a = generic_hull_membership(K, H, A, z, budget);
            io::json e{{"point", io::to_json(z)}, {"verdict", verdict_name(a.verdict)}};
            if (a.witness) e["witness"] = {{"x", io::to_json(a.witness->x)}, {"g", mat_json(a.witness->g)}};
            qs.push_back(e);
        }
        result["queries"] = qs;
    }
    emit(o.out, io::dump(result) + "\n", out);
    return kOk;
}

struct ExperimentOptions {
    int n = -1;
    int reps = -1;
    int finite_reps = -1;
    bool no_finite = false;
    double s_max = 50.0;
    double reference_mean = 1.0;
    std::string body, points, out;
    int d = 2;
    double tolerance = 0.03;
    std::uint64_t seed = 1;
    int threads = 0;
    bool check = false;
};

int finish_report(ExperimentReport r, const ExperimentOptions& o, std::ostream& out) {
    const std::string hash = config_hash(r.config);
    for (const StatTest& t : r.tests) {
        char line[512];
        std::snprintf(line, sizeof line, "%s %s: statistic=%.6g threshold=%.6g%s\n", t.pass ? "PASS" : "FAIL",
                      t.name.c_str(), t.statistic, t.threshold, t.gating ? "" : " (informational)");
        out << line;
    }
    out << (r.passed() ? "PASSED " : "FAILED ") << r.name << " config_hash=" << hash << "\n";
    if (!o.out.empty()) {
        write_atomic(o.out, io::dump(r.to_json()) + "\n");
        std::filesystem::path base(o.out);
        const std::string stem = (base.parent_path() / base.stem()).string();
        for (const auto& [key, table] : r.tables) write_atomic(stem + "." + key + ".csv", csv_with_hash(hash, table.csv()));
    }
    if (o.check && !r.passed()) return kCheckFailed;
    return kOk;
}

int run_experiment(const std::string& which, const ExperimentOptions& o, std::ostream& out) {
    const int threads = resolve_threads(o.threads);
    if (which == "so2-square") {
        SO2Config c;
        if (o.n > 0) c.n = o.n;
        if (o.reps > 0) c.limit_replicates = o.reps;
        if (o.finite_reps > 0) c.finite_replicates = o.finite_reps;
        c.finite = !o.no_finite;
        c.s_max = o.s_max;
        c.reference_mean = o.reference_mean;
        c.seed = o.seed;
        c.threads = threads;
        return finish_report(so2_square_experiment(c), o, out);
    }
    if (which == "translation-box") {
        BoxConfig c;
        if (o.n > 0) c.n = o.n;
        if (o.reps > 0) c.limit_replicates = o.reps;
        if (o.finite_reps > 0) c.finite_replicates = o.finite_reps;
        c.finite = !o.no_finite;
        c.seed = o.seed;
        c.threads = threads;
        return finish_report(translation_box_experiment(c), o, out);
    }
    if (which == "inclusion") {
        InclusionConfig c;
        if (!o.body.empty()) c.body = read_body(o.body);
        const int d = c.body.dim();
        if (!o.points.empty()) {
            c.points = read_points(o.points, tangent_dim(d));
        } else {
            if (d != 2) throw io::ParseError("--points", "required unless the body is planar");
            const Vec g = so2_generator();
            c.points = {(0.5 * g).eval(), (1.0 * g).eval()};
        }
        if (o.n > 0) c.n = o.n;
        if (o.reps > 0) c.replicates = o.reps;
        c.tolerance = o.tolerance;
        c.seed = o.seed;
        c.threads = threads;
        return finish_report(inclusion_experiment(c), o, out);
    }
    if (which == "recession") {
        const ConvexBody K = o.body.empty() ? ConvexBody::ball(2, 1.0) : read_body(o.body);
        return finish_report(recession_experiment(K), o, out);
    }
    if (which == "cones") {
        if (o.d != 2 && o.d != 3) throw io::ParseError("--d", "must be 2 or 3");
        return finish_report(cones_experiment(o.d, o.n > 0 ? o.n : 100000, o.seed), o, out);
    }
    throw io::ParseError("experiment", "unknown experiment '" + which + "'");
}

}  // namespace

void write_atomic(const std::string& path, const std::string& contents) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    std::filesystem::path tmp = target;
    tmp += ".tmp" + std::to_string(static_cast<unsigned long long>(std::hash<std::thread::id>{}(std::this_thread::get_id())));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << contents;
        f.flush();
        if (!f) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"K-hulls, zero cells of tangent-space tessellations, and their limit experiments", "khull"};
    app.require_subcommand(1);

    HullOptions hull;
    auto* hull_cmd = app.add_subcommand("hull", "compute conv_{K,H}(A)");
    hull_cmd->add_option("--body", hull.body, "body JSON")->required();
    hull_cmd->add_option("--points", hull.points, "CSV, one point per row")->required();
    hull_cmd->add_option("--family", hull.family,
                         "k-hull, translations-scalings, full-affine, linear, rotations, similarities, diagonal")
        ->required();
    hull_cmd->add_option("--query", hull.query, "CSV of points to test for membership");
    hull_cmd->add_option("--out", hull.out, "output JSON (stdout when omitted)");
    hull_cmd->add_option("--starts", hull.starts, "search starts per query")->check(CLI::PositiveNumber);
    hull_cmd->add_option("--evaluations", hull.evaluations, "evaluations per start")->check(CLI::PositiveNumber);
    hull_cmd->add_option("--seed", hull.seed, "search seed");

    auto* sim = app.add_subcommand("simulate", "draw P_K or a zero cell");
    sim->require_subcommand(1);
    std::string pk_body, pk_out;
    double pk_tmax = 0.0;
    std::uint64_t pk_seed = 1;
    auto* pk = sim->add_subcommand("pk", "marks (t, eta, u) of P_K on (0, tmax]");
    pk->add_option("--body", pk_body, "body JSON")->required();
    pk->add_option("--tmax", pk_tmax, "time horizon")->required()->check(CLI::PositiveNumber);
    pk->add_option("--seed", pk_seed, "seed");
    pk->add_option("--out", pk_out, "output CSV (stdout when omitted)");

    std::string zc_body, zc_cone = "full", zc_out;
    double zc_window = 0.0;
    std::uint64_t zc_seed = 1;
    auto* zc = sim->add_subcommand("zerocell", "zero cell seen in a window, restricted to a cone");
    zc->add_option("--body", zc_body, "body JSON")->required();
    zc->add_option("--cone", zc_cone, "cone preset");
    zc->add_option("--window", zc_window, "window radius R")->required()->check(CLI::PositiveNumber);
    zc->add_option("--seed", zc_seed, "seed");
    zc->add_option("--out", zc_out, "output JSON (stdout when omitted)");

    ExperimentOptions ex;
    std::string which;
    auto* exp = app.add_subcommand("experiment", "run an experiment and its statistical tests");
    exp->add_option("name", which, "so2-square, translation-box, inclusion, recession, cones")
        ->required()
        ->check(CLI::IsMember({"so2-square", "translation-box", "inclusion", "recession", "cones"}));
    exp->add_option("--n", ex.n, "sample size (points for cones)")->check(CLI::PositiveNumber);
    exp->add_option("--reps", ex.reps, "limit replicates")->check(CLI::PositiveNumber);
    exp->add_option("--finite-reps", ex.finite_reps, "finite-n replicates")->check(CLI::PositiveNumber);
    exp->add_flag("--no-finite", ex.no_finite, "skip the finite-n part");
    exp->add_option("--s-max", ex.s_max, "censoring level of extents")->check(CLI::PositiveNumber);
    exp->add_option("--reference-mean", ex.reference_mean, "mean of the reference exponential law (so2-square)")
        ->check(CLI::PositiveNumber);
    exp->add_option("--body", ex.body, "body JSON (inclusion, recession)");
    exp->add_option("--points", ex.points, "tangent points CSV, d + d^2 columns (inclusion)");
    exp->add_option("--tolerance", ex.tolerance, "inclusion frequency tolerance")->check(CLI::PositiveNumber);
    exp->add_option("--d", ex.d, "dimension (cones)");
    exp->add_option("--seed", ex.seed, "seed");
    exp->add_option("--threads", ex.threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
    exp->add_flag("--check", ex.check, "exit 3 when a gating test fails");
    exp->add_option("--out", ex.out, "report JSON; tables go to <stem>.<table>.csv");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }

    try {
        if (*hull_cmd) return run_hull(hull, out);
        if (*pk) {
            const ConvexBody K = read_body(pk_body);
            const PoissonSample s = sample_PK(K, pk_tmax, pk_seed);
            const io::json config{{"command", "simulate pk"}, {"body", io::to_json(K)}, {"tmax", pk_tmax}, {"seed", pk_seed}};
            emit(pk_out, csv_with_hash(config_hash(config), marks_csv(s, K.dim())), out);
            return kOk;
        }
        if (*zc) {
            const ConvexBody K = read_body(zc_body);
            ConeSpec cone;
            try {
                cone = ConeSpec::preset(zc_cone, K.dim());
            } catch (const std::invalid_argument& e) {
                throw io::ParseError("--cone", e.what());
            }
            const HalfSpaceSystem S = restrict_to_cone(build_zero_cell(K, zc_window, zc_seed), cone);
            const io::json config{{"command", "simulate zerocell"}, {"body", io::to_json(K)}, {"cone", zc_cone},
                                  {"window", zc_window}, {"seed", zc_seed}};
            io::json j = to_json(S);
            j["config_hash"] = config_hash(config);
            j["seed"] = zc_seed;
            emit(zc_out, io::dump(j) + "\n", out);
            return kOk;
        }
        if (*exp) return run_experiment(which, ex, out);
    } catch (const io::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kInvalid;
}

}  // namespace khull::cli
