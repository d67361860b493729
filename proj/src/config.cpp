#include "nsmild/config.hpp"

#include "nsmild/operators.hpp"
#include "nsmild/spectral.hpp"
#include "nsmild/taylor_green.hpp"
#include "nsmild/io.hpp"

#include <set>

namespace nsmild {
namespace {

using nlohmann::json;

class Section {
public:
    Section(const json& root, std::string name) : name_(std::move(name))
    {
        if (!root.contains(name_))
            return;
        node_ = &root.at(name_);
        if (!node_->is_object())
            throw ConfigError("field '" + name_ + "': expected an object");
    }

    void get(const char* key, double& out) { read(key, out, [](const json& v) { return v.is_number(); }, "a number"); }
    void get(const char* key, int& out)
    {
        read(key, out, [](const json& v) { return v.is_number_integer(); }, "an integer");
    }
    void get(const char* key, bool& out) { read(key, out, [](const json& v) { return v.is_boolean(); }, "a boolean"); }
    void get(const char* key, std::string& out)
    {
        read(key, out, [](const json& v) { return v.is_string(); }, "a string");
    }
    void get(const char* key, std::uint64_t& out)
    {
        read(key, out, [](const json& v) { return v.is_number_unsigned(); }, "a nonnegative integer");
    }
    void get(const char* key, std::vector<int>& out)
    {
        read(key, out, [](const json& v) {
            if (!v.is_array() || v.empty())
                return false;
            for (const auto& e : v)
                if (!e.is_number_integer())
                    return false;
            return true;
        }, "a nonempty array of integers");
    }

    bool has(const char* key) const { return node_ != nullptr && node_->contains(key); }

    /// Rejects keys no get() asked for.
    void finish() const
    {
        if (node_ == nullptr)
            return;
        for (const auto& [key, value] : node_->items())
            if (!known_.contains(key))
                throw ConfigError("field '" + name_ + "." + key + "': unknown key");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const
    {
        throw ConfigError("field '" + name_ + "." + key + "': " + what);
    }

private:
    template <class T, class Pred>
    void read(const char* key, T& out, Pred ok, const char* expected)
    {
        known_.insert(key);
        if (node_ == nullptr || !node_->contains(key))
            return;
        const json& v = node_->at(key);
        if (!ok(v))
            fail(key, std::string("expected ") + expected);
        out = v.get<T>();
    }

    std::string name_;
    const json* node_ = nullptr;
    std::set<std::string> known_;
};

InitialKind parse_initial_kind(const std::string& s)
{
    if (s == "zero")
        return InitialKind::zero;
    if (s == "taylor_green")
        return InitialKind::taylor_green;
    if (s == "random")
        return InitialKind::random;
    throw std::invalid_argument("unknown initial kind '" + s + "'");
}

} // namespace

RunConfig parse_config(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("config: top level must be a JSON object");

    static const std::set<std::string> sections{"grid", "solver", "forcing", "initial", "run", "verify", "estimate"};
    for (const auto& [key, value] : root.items())
        if (!sections.contains(key))
            throw ConfigError("field '" + key + "': unknown section");

    RunConfig cfg;
    cfg.source = root;

    Section grid(root, "grid");
    grid.get("dim", cfg.grid.dim);
    grid.get("n_modes", cfg.grid.n_modes);
    grid.get("period", cfg.grid.period);
    grid.finish();
    try {
        (void)nsmild::make_grid(cfg.grid.dim, cfg.grid.n_modes, cfg.grid.period);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("field 'grid': ") + e.what());
    }

    Section solver(root, "solver");
    std::string scheme = std::string(to_string(cfg.solver.scheme));
    solver.get("nu", cfg.solver.nu);
    solver.get("p", cfg.solver.p);
    solver.get("scheme", scheme);
    solver.get("dt", cfg.solver.dt);
    solver.get("window_T", cfg.solver.window_T);
    solver.get("n_nodes", cfg.solver.n_nodes);
    solver.get("picard_tol", cfg.solver.picard_tol);
    solver.get("picard_max_iters", cfg.solver.picard_max_iters);
    solver.get("dealias", cfg.solver.dealias);
    solver.finish();
    try {
        cfg.solver.scheme = parse_scheme(scheme);
    } catch (const std::invalid_argument& e) {
        solver.fail("scheme", e.what());
    }

    Section forcing(root, "forcing");
    std::string fkind = std::string(to_string(cfg.forcing.kind));
    forcing.get("kind", fkind);
    forcing.get("exponent", cfg.forcing.exponent);
    forcing.get("seed", cfg.forcing.seed);
    forcing.get("amplitude", cfg.forcing.amplitude);
    forcing.get("decay", cfg.forcing.decay);
    forcing.finish();
    try {
        cfg.forcing.kind = parse_forcing_kind(fkind);
    } catch (const std::invalid_argument& e) {
        forcing.fail("kind", e.what());
    }
    if (cfg.forcing.kind == ForcingKind::hoelder_modulated && !(cfg.forcing.exponent > 0.0 && cfg.forcing.exponent <= 1.0))
        forcing.fail("exponent", "must lie in (0, 1]");
    if (!(cfg.forcing.decay > 0.0))
        forcing.fail("decay", "must be positive");

    Section initial(root, "initial");
    std::string ikind = "random";
    double x_half = -1.0;
    initial.get("kind", ikind);
    initial.get("amplitude", cfg.initial.amplitude);
    initial.get("decay", cfg.initial.decay);
    initial.get("x_half_norm", x_half);
    initial.finish();
    try {
        cfg.initial.kind = parse_initial_kind(ikind);
    } catch (const std::invalid_argument& e) {
        initial.fail("kind", e.what());
    }
    if (initial.has("x_half_norm")) {
        if (!(x_half >= 0.0))
            initial.fail("x_half_norm", "must be nonnegative");
        cfg.initial.x_half_norm = x_half;
    }
    if (!(cfg.initial.decay > 0.0))
        initial.fail("decay", "must be positive");
    if (cfg.initial.kind == InitialKind::taylor_green && cfg.grid.dim != 2)
        initial.fail("kind", "taylor_green requires grid.dim = 2");

    Section run(root, "run");
    run.get("t_end", cfg.run.t_end);
    run.get("snapshot_every", cfg.run.snapshot_every);
    run.get("seed", cfg.run.seed);
    run.get("out_dir", cfg.run.out_dir);
    run.finish();
    if (!(cfg.run.t_end > 0.0))
        run.fail("t_end", "must be positive");
    if (cfg.run.snapshot_every < 1)
        run.fail("snapshot_every", "must be >= 1");
    cfg.solver.snapshot_every = cfg.run.snapshot_every;

    try {
        cfg.solver.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid setting: ") + e.what());
    }

    Section verify(root, "verify");
    cfg.verify.dim = cfg.grid.dim;
    cfg.verify.n_modes = cfg.grid.n_modes;
    cfg.verify.period = cfg.grid.period;
    verify.get("ensemble_size", cfg.verify.ensemble.size);
    verify.get("decay", cfg.verify.ensemble.spectrum_decay);
    verify.get("amplitude", cfg.verify.ensemble.amplitude);
    verify.get("identity_tol", cfg.verify.identity_tol);
    verify.get("gradient_norm_tol", cfg.verify.gradient_norm_tol);
    verify.get("orthogonality_tol", cfg.verify.orthogonality_tol);
    verify.get("oracle_tol", cfg.verify.oracle_tol);
    verify.get("n_test", cfg.verify.n_test);
    verify.finish();
    if (cfg.verify.ensemble.size < 2)
        verify.fail("ensemble_size", "must be >= 2");
    if (!(cfg.verify.ensemble.spectrum_decay > 0.0))
        verify.fail("decay", "must be positive");

    Section estimate(root, "estimate");
    estimate.get("ensemble_size", cfg.estimate.ensemble_size);
    estimate.get("resolutions", cfg.estimate.resolutions);
    estimate.get("delta", cfg.estimate.exponents.delta);
    estimate.get("theta", cfg.estimate.exponents.theta);
    estimate.get("omega", cfg.estimate.exponents.omega);
    estimate.get("p", cfg.estimate.p);
    estimate.get("decay", cfg.estimate.decay);
    estimate.get("amplitude", cfg.estimate.amplitude);
    estimate.get("gamma", cfg.estimate.gamma);
    estimate.get("trajectory_t_end", cfg.estimate.trajectory_t_end);
    estimate.get("trajectory_dt", cfg.estimate.trajectory_dt);
    estimate.finish();
    if (cfg.estimate.ensemble_size < 1)
        estimate.fail("ensemble_size", "must be >= 1");
    for (int n : cfg.estimate.resolutions)
        if (n < 8 || n % 2 != 0)
            estimate.fail("resolutions", "entries must be even and >= 8");
    if (cfg.estimate.exponents.delta != 0.0)
        estimate.fail("delta", "only delta = 0 is supported");
    if (!(cfg.estimate.p >= 2.0))
        estimate.fail("p", "must be >= 2");
    if (!(cfg.estimate.trajectory_dt > 0.0) || !(cfg.estimate.trajectory_t_end > 0.0))
        estimate.fail("trajectory_dt", "trajectory settings must be positive");

    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::string text;
    try {
        text = io::read_text(path);
    } catch (const std::runtime_error& e) {
        throw ConfigError(e.what());
    }
    return parse_config(text);
}

TorusGrid RunConfig::make_grid() const
{
    return nsmild::make_grid(grid.dim, grid.n_modes, grid.period);
}

SolverConfig RunConfig::solver_config(const TorusGrid& g) const
{
    SolverConfig out = solver;
    if (forcing.kind == ForcingKind::zero)
        out.forcing = ForcingSpec::zero();
    else
        out.forcing = ForcingSpec(forcing.kind, random_divfree_field(g, forcing.seed, forcing.decay, forcing.amplitude),
                                  forcing.exponent);
    return out;
}

SpectralVectorField RunConfig::initial_field(const TorusGrid& g) const
{
    switch (initial.kind) {
    case InitialKind::zero:
        return SpectralVectorField::zero(g);
    case InitialKind::taylor_green:
        return initial.amplitude * taylor_green(g, solver.nu, 0.0);
    case InitialKind::random: {
        SpectralVectorField u = random_divfree_field(g, run.seed, initial.decay, initial.amplitude);
        if (initial.x_half_norm) {
            const double n = frac_norm(u, FracNormParams(0.5, solver.p));
            if (n > 0.0)
                u.coeffs *= *initial.x_half_norm / n;
        }
        return u;
    }
    }
    return SpectralVectorField::zero(g);
}

} // namespace nsmild
