#include "efluid/kinetic/generate.hpp"

#include "efluid/errors.hpp"
#include "efluid/espace/csv.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <random>
#include <sstream>

namespace efluid::kinetic {

Distribution parse_distribution(const std::string& text, const std::string& key)
{
    std::istringstream is(text);
    std::string kind;
    is >> kind;
    std::vector<double> params;
    std::string tok;
    while (is >> tok) {
        try {
            params.push_back(espace::parse_number(tok, key));
        } catch (const ValidationError&) {
            throw ValidationError(key, fmt::format("'{}' is not a number", tok));
        }
    }

    auto expect = [&](std::size_t n) {
        if (params.size() != n) {
            throw ValidationError(key, fmt::format("'{}' takes {} parameter(s), got {}", kind, n, params.size()));
        }
    };
    Distribution d;
    if (kind == "constant") {
        expect(1);
        d = {Distribution::Kind::constant, params[0], 0.0};
    } else if (kind == "uniform") {
        expect(2);
        if (!(params[0] <= params[1])) throw ValidationError(key, "uniform needs lo <= hi");
        d = {Distribution::Kind::uniform, params[0], params[1]};
    } else if (kind == "normal") {
        expect(2);
        if (!(params[1] >= 0.0)) throw ValidationError(key, "normal needs sigma >= 0");
        d = {Distribution::Kind::normal, params[0], params[1]};
    } else {
        throw ValidationError(key, fmt::format("unknown distribution '{}' (constant, uniform, normal)", kind));
    }
    return d;
}

namespace {

// mt19937_64 is fully specified by the standard; the std distributions are
// not, so the transforms below are spelled out to keep output bit-identical
// across standard libraries.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double draw(const Distribution& d)
    {
        switch (d.kind) {
        case Distribution::Kind::constant: return d.p1;
        case Distribution::Kind::uniform: return d.p1 + (d.p2 - d.p1) * unit();
        case Distribution::Kind::normal: return d.p1 + d.p2 * normal();
        }
        return 0.0;
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace

AgentEnsemble generate_ensemble(std::size_t count, std::uint64_t seed, const EnsembleSpec& spec)
{
    const auto& grid = spec.grid;
    if (spec.vars.size() != spec.var_names.size()) {
        throw ValidationError("variables", "one distribution per variable name required");
    }
    if (spec.normal_placement) {
        for (int d = 0; d < grid.dim(); ++d) {
            if (!(spec.width[d] > 0.0)) throw ValidationError("agents.width", "placement width must be > 0");
        }
    }
    Sampler rng(seed);
    std::vector<EParticle> particles;
    particles.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        EParticle p;
        for (int d = 0; d < grid.dim(); ++d) {
            const double X = grid.extent(d);
            if (!spec.normal_placement) {
                p.coords[d] = X * rng.unit();
                continue;
            }
            int tries = 0;
            double x = -1.0;
            while (!(x >= 0.0 && x <= X)) {
                if (++tries > 10000) {
                    throw ValidationError("agents.center", "normal placement keeps falling outside the domain");
                }
                x = spec.center[d] + spec.width[d] * rng.normal();
            }
            p.coords[d] = x;
        }
        for (int d = 0; d < grid.dim(); ++d) p.velocity[d] = rng.draw(spec.velocity);
        p.vars.reserve(spec.vars.size());
        for (const auto& law : spec.vars) p.vars.push_back(rng.draw(law));
        particles.push_back(std::move(p));
    }
    return AgentEnsemble(grid, spec.var_names, std::move(particles), seed);
}

} // namespace efluid::kinetic
