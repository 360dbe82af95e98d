#include "shearsub/convergence.hpp"
#include "shearsub/fsd.hpp"
#include "shearsub/hbasis.hpp"
#include "shearsub/masks.hpp"
#include "shearsub/subdivision.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace shearsub;

namespace {

int exit_usage = 2, exit_validation = 3, exit_data = 4;

BigRational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos)
        return BigRational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        BigInt den = 1;
        for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        return BigRational(BigInt(digits), den);
    }
    return BigRational(BigInt(s));
}

Slope parse_slope(const std::string& s) {
    if (s == "inf" || s == "infinity") return Slope::inf();
    return Slope::finite(parse_rational(s));
}

struct PairOpts {
    std::string pair = "dd";
    unsigned order = 4;
    std::string a0_path, a1_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--pair", pair, "mask pair: dd, bspline, or files")
            ->check(CLI::IsMember({"dd", "bspline", "files"}));
        cmd->add_option("--order", order, "B-spline order (pair=bspline)");
        cmd->add_option("--a0", a0_path, "mask JSON for the axis branch (pair=files)");
        cmd->add_option("--a1", a1_path, "mask JSON for the shear branch (pair=files)");
    }

    MaskPair build() const {
        if (pair == "dd") return dd_pair();
        if (pair == "bspline") return shearsub::make_pair(bspline_mask(order), bspline_mask(order));
        if (a0_path.empty() || a1_path.empty())
            throw std::invalid_argument("--pair files needs --a0 and --a1");
        MaskPair p;
        p.a0 = mask_from_json(slurp(a0_path));
        p.a1 = mask_from_json(slurp(a1_path));
        p.interpolatory = check_interpolatory(p.a0) && check_interpolatory(p.a1);
        return p;
    }

    static std::string slurp(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("cannot open " + path);
        std::ostringstream ss;
        ss << is.rdbuf();
        return ss.str();
    }
};

FieldD fixture_c1() {
    FieldD f = FieldD::zeros(-1, -1, 3, 3);
    for (long long y = -1; y <= 1; ++y) f.ref(0, y) = Dyadic(1);
    return f;
}

FieldD fixture_c2() {
    FieldD f = FieldD::zeros(-2, -2, 5, 5);
    const char* rows[5] = {"0h000", "0h000", "11111", "000h0", "000h0"};
    for (long long r = 0; r < 5; ++r)
        for (long long cidx = 0; cidx < 5; ++cidx) {
            char ch = rows[r][cidx];
            Dyadic v = ch == '1' ? Dyadic(1) : ch == 'h' ? Dyadic(1, 1) : Dyadic();
            f.ref(cidx - 2, r - 2) = v;
        }
    return f;
}

FieldD fixture_delta() {
    FieldD f = FieldD::zeros(-4, -4, 9, 9);
    f.ref(0, 0) = Dyadic(1);
    return f;
}

FieldD load_input(const std::string& name) {
    if (name == "C1") return fixture_c1();
    if (name == "C2") return fixture_c2();
    if (name == "delta") return fixture_delta();
    return read_csv_file_dyadic(name);
}

void write_output(const FieldD& f, const std::string& out, const std::string& format) {
    if (format == "csv" || format == "both") write_csv_file(out, f);
    if (format == "pgm" || format == "both") {
        std::string pgm = format == "pgm" ? out : out + ".pgm";
        write_pgm_file(pgm, to_float(f));
    }
}

int cmd_mask_build(const PairOpts& opts, const std::string& prefix, long long shear) {
    MaskPair p = opts.build();
    std::ofstream(prefix + "0.json") << mask_to_json(p.a0, prefix + "0") << "\n";
    std::ofstream(prefix + "1.json") << mask_to_json(p.a1, prefix + "1") << "\n";
    std::cout << prefix << "0.json " << prefix << "1.json";
    if (shear != 0) {
        std::string name = prefix + "0_shear" + std::to_string(shear);
        std::ofstream(name + ".json") << mask_to_json(shear_reindex(p.a0, shear), name) << "\n";
        std::cout << " " << name << ".json";
    }
    std::cout << "\n";
    return 0;
}

int cmd_mask_check(const std::string& path) {
    LaurentPoly a = mask_from_json(PairOpts::slurp(path));
    bool interp = check_interpolatory(a);
    bool sum0 = sum_rule_check(a, 0);
    bool sum1 = sum_rule_check(a, 1);
    std::cout << "interpolatory: " << (interp ? "ok" : "no") << "\n";
    std::cout << "sum_rule: " << (sum0 && sum1 ? "ok" : "fail") << "\n";
    HReduction red = hbasis_reduce(LaurentPoly(a));
    std::cout << "ideal_member: " << (red.member() ? "yes" : "no") << " (cofactor supports p="
              << red.p.support_size() << " q=" << red.q.support_size() << " r="
              << red.r.support_size() << ", remainder " << red.remainder.support_size()
              << " terms)\n";
    return (sum0 && sum1) ? 0 : exit_validation;
}

int cmd_refine(const PairOpts& opts, const std::string& eps_str, const std::string& input,
               const std::string& boundary, long long period, const std::string& out,
               const std::string& format) {
    MaskPair p = opts.build();
    EpsWord eps = EpsWord::from_string(eps_str);
    FieldD c = load_input(input);
    if (boundary == "periodic" && c.boundary != Boundary::periodic) {
        FieldD t = FieldD::periodic_zeros(period, period);
        for (long long y = c.oy; y < c.oy + c.ny; ++y)
            for (long long x = c.ox; x < c.ox + c.nx; ++x)
                t.ref(((x % period) + period) % period, ((y % period) + period) % period) =
                    c.ref(x, y);
        c = t;
    }
    FieldD r = run(p, eps, c);
    write_output(r, out, format);
    return 0;
}

int cmd_converge(const PairOpts& opts, unsigned max_depth) {
    ConvergenceReport rep = convergence_verdict(opts.build(), max_depth);
    std::cout << report_json(rep) << "\n";
    return rep.sum_rule_ok ? 0 : exit_validation;
}

int cmd_plan(const std::string& source, const std::string& target, const std::string& delta) {
    auto word = plan_direction(parse_slope(source), parse_slope(target), parse_rational(delta));
    if (!word) {
        std::cerr << "target slope unreachable (must lie in [1/2, inf])\n";
        return exit_validation;
    }
    std::cout << word->str() << "\n";
    return 0;
}

int cmd_decompose(const PairOpts& opts, const std::string& input, unsigned depth,
                  const std::string& tree_dir, const std::string& path_str, bool keep_interior) {
    FieldD c = load_input(input);
    MaskPair p = opts.build();
    std::optional<EpsWord> path;
    if (!path_str.empty()) path = EpsWord::from_string(path_str);
    ShearletTree tree = decompose(c, depth, p, path ? &*path : nullptr, keep_interior);
    write_tree(tree_dir, tree);
    std::cout << "wrote tree (" << tree.scaling.size() << " scaling, " << tree.details.size()
              << " detail arrays) to " << tree_dir << "\n";
    return 0;
}

int cmd_reconstruct(const PairOpts& opts, const std::string& tree_dir, const std::string& path_str,
                    const std::string& out, const std::string& format) {
    ShearletTree tree = read_tree(tree_dir);
    EpsWord path = path_str.empty()
                       ? (tree.full ? EpsWord(std::vector<uint8_t>(tree.depth, 0)) : tree.path)
                       : EpsWord::from_string(path_str);
    FieldD c = reconstruct(tree, path, opts.build());
    write_output(c, out, format);
    return 0;
}

int cmd_roundtrip(const PairOpts& opts, const std::string& input, unsigned depth) {
    FieldD c = load_input(input);
    MaskPair p = opts.build();
    ShearletTree tree = decompose(c, depth, p);
    Dyadic max_err;
    for (unsigned long long leaf = 0; leaf < (1ULL << depth); ++leaf) {
        std::vector<uint8_t> bits(depth);
        for (unsigned j = 0; j < depth; ++j) bits[j] = (leaf >> j) & 1;
        FieldD r = reconstruct(tree, EpsWord(std::move(bits)), p);
        if (r.values.size() != c.values.size())
            throw ShapeMismatch("roundtrip output dims differ from input");
        for (size_t i = 0; i < c.values.size(); ++i) {
            Dyadic e = (r.values[i] - c.values[i]).abs();
            if (max_err < e) max_err = e;
        }
    }
    std::cout << "max_error: " << max_err.str() << (max_err.is_zero() ? " (exact)" : "") << "\n";
    return max_err.is_zero() ? 0 : exit_validation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive directional subdivision and shearlet decomposition"};
    app.require_subcommand(1);

    // mask build / mask check
    auto* mask = app.add_subcommand("mask", "build or check refinement masks");
    mask->require_subcommand(1);
    auto* mb = mask->add_subcommand("build", "emit mask pair as JSON");
    PairOpts mb_pair;
    mb_pair.attach(mb);
    std::string mb_prefix = "a";
    long long mb_shear = 0;
    mb->add_option("--out-prefix", mb_prefix, "output file prefix");
    mb->add_option("--shear", mb_shear, "also emit the mask resheared by U^k");
    auto* mc = mask->add_subcommand("check", "validate a mask JSON file");
    std::string mc_path;
    mc->add_option("file", mc_path, "mask JSON file")->required();

    auto* rf = app.add_subcommand("refine", "apply a branch word to sample data");
    PairOpts rf_pair;
    rf_pair.attach(rf);
    std::string rf_eps, rf_input, rf_boundary = "zero", rf_out = "refined.csv", rf_format = "csv";
    long long rf_period = 64;
    rf->add_option("--eps", rf_eps, "branch word, e.g. 01011")->required();
    rf->add_option("--input", rf_input, "C1, C2, delta, or a field CSV path")->required();
    rf->add_option("--boundary", rf_boundary, "zero or periodic")
        ->check(CLI::IsMember({"zero", "periodic"}));
    rf->add_option("--period", rf_period, "torus size when wrapping a fixture");
    rf->add_option("--out", rf_out, "output path");
    rf->add_option("--format", rf_format, "csv, pgm, or both")
        ->check(CLI::IsMember({"csv", "pgm", "both"}));

    auto* cv = app.add_subcommand("converge", "certify convergence of a mask pair");
    PairOpts cv_pair;
    cv_pair.attach(cv);
    unsigned cv_depth = 6;
    cv->add_option("--max-depth", cv_depth, "deepest branch length (default 6, max 8)")
        ->check(CLI::Range(1u, 8u));

    auto* pl = app.add_subcommand("plan", "find a branch word steering a slope to a target");
    std::string pl_source, pl_target, pl_delta = "1/1000";
    pl->add_option("--source-slope", pl_source, "source slope: rational, decimal, or inf")
        ->required();
    pl->add_option("--target", pl_target, "target slope")->required();
    pl->add_option("--delta", pl_delta, "tolerance");

    auto* dc = app.add_subcommand("decompose", "build the shearlet coefficient tree");
    PairOpts dc_pair;
    dc_pair.attach(dc);
    std::string dc_input, dc_dir, dc_path;
    unsigned dc_depth = 1;
    bool dc_keep = false;
    dc->add_option("--input", dc_input, "periodic field CSV")->required();
    dc->add_option("--depth", dc_depth, "tree depth")->required();
    dc->add_option("--tree-dir", dc_dir, "output directory")->required();
    dc->add_option("--path", dc_path, "single branch word instead of the full tree");
    dc->add_flag("--keep-interior", dc_keep, "store scaling arrays at interior nodes");

    auto* rc = app.add_subcommand("reconstruct", "synthesize data from a coefficient tree");
    PairOpts rc_pair;
    rc_pair.attach(rc);
    std::string rc_dir, rc_path, rc_out = "reconstructed.csv", rc_format = "csv";
    rc->add_option("--tree-dir", rc_dir, "tree directory")->required();
    rc->add_option("--path", rc_path, "root-to-leaf word (default: stored or all-zero path)");
    rc->add_option("--out", rc_out, "output path");
    rc->add_option("--format", rc_format, "csv, pgm, or both")
        ->check(CLI::IsMember({"csv", "pgm", "both"}));

    auto* rt = app.add_subcommand("roundtrip", "decompose, reconstruct on every path, report error");
    PairOpts rt_pair;
    rt_pair.attach(rt);
    std::string rt_input;
    unsigned rt_depth = 1;
    rt->add_option("--input", rt_input, "periodic field CSV")->required();
    rt->add_option("--depth", rt_depth, "tree depth")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (mb->parsed()) return cmd_mask_build(mb_pair, mb_prefix, mb_shear);
        if (mc->parsed()) return cmd_mask_check(mc_path);
        if (rf->parsed())
            return cmd_refine(rf_pair, rf_eps, rf_input, rf_boundary, rf_period, rf_out, rf_format);
        if (cv->parsed()) return cmd_converge(cv_pair, cv_depth);
        if (pl->parsed()) return cmd_plan(pl_source, pl_target, pl_delta);
        if (dc->parsed())
            return cmd_decompose(dc_pair, dc_input, dc_depth, dc_dir, dc_path, dc_keep);
        if (rc->parsed()) return cmd_reconstruct(rc_pair, rc_dir, rc_path, rc_out, rc_format);
        if (rt->parsed()) return cmd_roundtrip(rt_pair, rt_input, rt_depth);
    } catch (const PeriodMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    } catch (const ShapeMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    } catch (const MissingNode& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    } catch (const NotInIdeal& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const NotInterpolatory& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
