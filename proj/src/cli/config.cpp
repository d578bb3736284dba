#include "efluid/cli/config.hpp"

#include "efluid/errors.hpp"
#include "efluid/espace/csv.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <numbers>
#include <sstream>

namespace efluid::cli {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double keyed_number(const std::string& text, const std::string& key)
{
    try {
        return espace::parse_number(text, key);
    } catch (const ValidationError&) {
        throw ValidationError(key, fmt::format("'{}' is not a number", text));
    }
}

bool key_matches(const std::string& key, const std::string& pattern)
{
    if (!pattern.empty() && pattern.back() == '*') return key.rfind(pattern.substr(0, pattern.size() - 1), 0) == 0;
    return key == pattern;
}

} // namespace

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

IniDoc IniDoc::parse(const std::string& text, const std::string& origin)
{
    IniDoc doc;
    doc.text_ = text;
    doc.origin_ = origin;
    std::istringstream is(text);
    try {
        pt::read_ini(is, doc.tree_);
    } catch (const pt::ini_parser_error& e) {
        throw ValidationError(fmt::format("{} line {}: {}", origin, e.line(), e.message()));
    }
    for (const auto& [name, section] : doc.tree_) {
        if (section.empty() && !section.data().empty()) {
            throw ValidationError(name, fmt::format("{}: keys must live inside a [section]", origin));
        }
    }
    return doc;
}

IniDoc IniDoc::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(fmt::format("cannot read '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

bool IniDoc::has_section(const std::string& section) const
{
    return tree_.find(section) != tree_.not_found();
}

void IniDoc::allow_sections(const std::vector<std::string>& sections) const
{
    for (const auto& [name, _] : tree_) {
        if (std::find(sections.begin(), sections.end(), name) == sections.end()) {
            throw ValidationError(name, fmt::format("{}: unknown section [{}]", origin_, name));
        }
    }
}

void IniDoc::allow_keys(const std::string& section, const std::vector<std::string>& keys) const
{
    const auto it = tree_.find(section);
    if (it == tree_.not_found()) return;
    for (const auto& [key, _] : it->second) {
        const bool ok = std::any_of(keys.begin(), keys.end(), [&](const std::string& p) { return key_matches(key, p); });
        if (!ok) throw ValidationError(section + "." + key, fmt::format("{}: unknown key", origin_));
    }
}

std::optional<std::string> IniDoc::get(const std::string& section, const std::string& key) const
{
    const auto sit = tree_.find(section);
    if (sit == tree_.not_found()) return std::nullopt;
    const auto kit = sit->second.find(key);
    if (kit == sit->second.not_found()) return std::nullopt;
    return trim(kit->second.data());
}

std::string IniDoc::require(const std::string& section, const std::string& key) const
{
    auto v = get(section, key);
    if (!v || v->empty()) throw ValidationError(section + "." + key, fmt::format("{}: required key missing", origin_));
    return *v;
}

double IniDoc::number(const std::string& section, const std::string& key) const
{
    return keyed_number(require(section, key), section + "." + key);
}

double IniDoc::number_or(const std::string& section, const std::string& key, double fallback) const
{
    const auto v = get(section, key);
    return v ? keyed_number(*v, section + "." + key) : fallback;
}

long long IniDoc::integer(const std::string& section, const std::string& key) const
{
    const std::string full = section + "." + key;
    const std::string text = require(section, key);
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ValidationError(full, fmt::format("'{}' is not an integer", text));
    }
}

long long IniDoc::integer_or(const std::string& section, const std::string& key, long long fallback) const
{
    return get(section, key) ? integer(section, key) : fallback;
}

std::vector<double> IniDoc::numbers(const std::string& section, const std::string& key) const
{
    std::vector<double> out;
    for (const auto& item : split_list(require(section, key))) out.push_back(keyed_number(item, section + "." + key));
    return out;
}

std::vector<std::string> IniDoc::keys(const std::string& section) const
{
    std::vector<std::string> out;
    const auto it = tree_.find(section);
    if (it == tree_.not_found()) return out;
    for (const auto& [key, _] : it->second) out.push_back(key);
    return out;
}

espace::SpaceGrid parse_space(const IniDoc& doc)
{
    doc.allow_keys("space", {"dim", "extent", "cells", "boundary"});
    const long long dim = doc.integer("space", "dim");
    if (dim < 1 || dim > 3) throw ValidationError("space.dim", fmt::format("must be 1, 2 or 3 (got {})", dim));

    auto per_axis = [&](const std::string& key) {
        auto vals = doc.numbers("space", key);
        if (vals.size() == 1) vals.assign(static_cast<std::size_t>(dim), vals[0]);
        if (vals.size() != static_cast<std::size_t>(dim)) {
            throw ValidationError("space." + key, fmt::format("needs 1 or {} values (got {})", dim, vals.size()));
        }
        return vals;
    };
    const auto extent = per_axis("extent");
    const auto cells = per_axis("cells");
    std::array<double, 3> ext{1.0, 1.0, 1.0};
    std::array<int, 3> cel{1, 1, 1};
    for (int d = 0; d < dim; ++d) {
        ext[d] = extent[d];
        if (cells[d] != std::floor(cells[d]) || cells[d] > 1e8) {
            throw ValidationError("space.cells", fmt::format("'{}' is not a cell count", cells[d]));
        }
        cel[d] = static_cast<int>(cells[d]);
    }
    return espace::SpaceGrid(static_cast<int>(dim), ext, cel, espace::parse_boundary(doc.require("space", "boundary")));
}

namespace {

ModelConfig parse_model(const IniDoc& doc, int dim)
{
    ModelConfig m;
    const std::string type = doc.require("model", "type");
    if (type == "conjugate") {
        doc.allow_keys("model", {"type", "alpha_i", "alpha_c", "beta_i", "beta_c", "u_i0", "u_c0"});
        m.type = ModelType::conjugate;
        m.conjugate = hydro::ConjugateParams::make(doc.number("model", "alpha_i"), doc.number("model", "alpha_c"),
                                                   doc.number("model", "beta_i"), doc.number("model", "beta_c"),
                                                   doc.number_or("model", "u_i0", 1.0), doc.number_or("model", "u_c0", 1.0));
        m.fluids = {"I", "C"};
        m.backgrounds = {m.conjugate->u_i0, m.conjugate->u_c0};
        return m;
    }
    if (type != "generic") throw ValidationError("model.type", fmt::format("unknown model type '{}' (conjugate, generic)", type));

    doc.allow_keys("model", {"type", "fluids", "background", "term*"});
    m.type = ModelType::generic;
    m.fluids = split_list(doc.require("model", "fluids"));
    if (m.fluids.empty()) throw ValidationError("model.fluids", "needs at least one fluid name");
    for (std::size_t i = 0; i < m.fluids.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (m.fluids[i] == m.fluids[j]) throw ValidationError("model.fluids", fmt::format("duplicate fluid '{}'", m.fluids[i]));
        }
    }
    m.backgrounds = doc.numbers("model", "background");
    if (m.backgrounds.size() != m.fluids.size()) {
        throw ValidationError("model.background", fmt::format("needs one value per fluid ({})", m.fluids.size()));
    }
    for (const auto& key : doc.keys("model")) {
        if (key.rfind("term", 0) != 0) continue;
        const std::string full = "model." + key;
        std::istringstream is(doc.require("model", key));
        std::string target, slot, kind, coef, source, extra;
        if (!(is >> target >> slot >> kind >> coef >> source) || (is >> extra)) {
            throw ValidationError(full, "expected '<target> <Q1|Q2> <kind> <coefficient> <source>'");
        }
        m.spec.terms.push_back({target, hydro::parse_slot(slot, full), hydro::parse_term_kind(kind, full),
                                keyed_number(coef, full), source});
    }
    try {
        m.spec.validate(m.fluids, dim);
    } catch (const ValidationError& e) {
        // validate() numbers terms by position; map back to file keys.
        std::vector<std::string> term_keys;
        for (const auto& key : doc.keys("model"))
            if (key.rfind("term", 0) == 0) term_keys.push_back(key);
        std::string msg = e.what();
        const std::string& k = e.key();
        if (k.rfind("model.term", 0) == 0) {
            const std::size_t idx = std::stoul(k.substr(10)) - 1;
            if (idx < term_keys.size()) {
                msg.replace(0, k.size(), "model." + term_keys[idx]);
                throw ValidationError(msg);
            }
        }
        throw;
    }
    return m;
}

InitConfig parse_init(const IniDoc& doc, const espace::SpaceGrid& grid, const std::filesystem::path& base_dir,
                      std::vector<std::string>& warnings)
{
    doc.allow_keys("init", {"mode", "k", "mode_index", "amplitude", "branch", "seed", "phase", "center", "width", "file"});
    InitConfig init;
    const std::string mode = doc.require("init", "mode");
    init.seed = static_cast<std::uint64_t>(doc.integer_or("init", "seed", 0));
    if (mode == "plane_wave") {
        init.mode = InitMode::plane_wave;
        const double X = grid.extent(0);
        const bool has_k = doc.get("init", "k").has_value();
        const bool has_m = doc.get("init", "mode_index").has_value();
        if (has_k == has_m) throw ValidationError("init.k", "give exactly one of init.k or init.mode_index");
        if (has_m) {
            const long long m = doc.integer("init", "mode_index");
            if (m < 1) throw ValidationError("init.mode_index", "must be >= 1");
            init.k = 2.0 * std::numbers::pi * static_cast<double>(m) / X;
        } else {
            const double k = doc.number("init", "k");
            if (!(k > 0.0)) throw ValidationError("init.k", "must be > 0");
            init.k = k;
            if (grid.boundary() == espace::Boundary::periodic) {
                const double m = std::max(1.0, std::round(k * X / (2.0 * std::numbers::pi)));
                const double snapped = 2.0 * std::numbers::pi * m / X;
                if (std::abs(snapped - k) > 1e-12 * k) {
                    warnings.push_back(fmt::format("init.k snapped from {} to {} (mode {}) to fit the periodic domain",
                                                   espace::format_number(k), espace::format_number(snapped), m));
                }
                init.k = snapped;
            }
        }
        init.amplitude = doc.number("init", "amplitude");
        init.branch = static_cast<int>(doc.integer_or("init", "branch", 1));
        if (init.branch != 1 && init.branch != 2) throw ValidationError("init.branch", "must be 1 or 2");
        const std::string phase = doc.get("init", "phase").value_or("zero");
        if (phase != "zero" && phase != "random") throw ValidationError("init.phase", "must be 'zero' or 'random'");
        init.random_phase = phase == "random";
    } else if (mode == "gaussian_bump") {
        init.mode = InitMode::gaussian_bump;
        init.amplitude = doc.number("init", "amplitude");
        init.width = doc.number("init", "width");
        if (!(init.width > 0.0)) throw ValidationError("init.width", "must be > 0");
        for (int d = 0; d < grid.dim(); ++d) init.center[d] = 0.5 * grid.extent(d);
        if (doc.get("init", "center")) {
            auto c = doc.numbers("init", "center");
            if (c.size() == 1) c.assign(static_cast<std::size_t>(grid.dim()), c[0]);
            if (c.size() != static_cast<std::size_t>(grid.dim())) throw ValidationError("init.center", "needs 1 or dim values");
            for (int d = 0; d < grid.dim(); ++d) init.center[d] = c[d];
        }
    } else if (mode == "from_file") {
        init.mode = InitMode::from_file;
        init.file = base_dir / doc.require("init", "file");
    } else {
        throw ValidationError("init.mode", fmt::format("unknown mode '{}' (plane_wave, gaussian_bump, from_file)", mode));
    }
    if (!std::isfinite(init.amplitude)) throw ValidationError("init.amplitude", "must be finite");
    return init;
}

hydro::RunSettings parse_run(const IniDoc& doc)
{
    doc.allow_keys("run", {"dt", "cfl", "t_end", "output_stride"});
    hydro::RunSettings run;
    const std::string dt = doc.get("run", "dt").value_or("auto");
    run.dt = dt == "auto" ? 0.0 : keyed_number(dt, "run.dt");
    if (dt != "auto" && !(run.dt > 0.0)) throw ValidationError("run.dt", "must be > 0 or 'auto'");
    run.cfl_fraction = doc.number_or("run", "cfl", 1.0);
    if (!(run.cfl_fraction > 0.0 && run.cfl_fraction <= 1.0)) throw ValidationError("run.cfl", "must be in (0, 1]");
    run.t_end = doc.number("run", "t_end");
    if (!(run.t_end > 0.0)) throw ValidationError("run.t_end", "must be > 0");
    const long long stride = doc.integer_or("run", "output_stride", 1);
    if (stride < 1) throw ValidationError("run.output_stride", "must be >= 1");
    run.snapshot_every = static_cast<std::size_t>(stride);
    return run;
}

OutputConfig parse_output(const IniDoc& doc, const espace::SpaceGrid& grid)
{
    doc.allow_keys("output", {"directory", "aggregate_window", "formats"});
    OutputConfig out;
    out.directory = doc.get("output", "directory").value_or("");
    if (const auto f = doc.get("output", "formats"); f && *f != "csv") {
        throw ValidationError("output.formats", fmt::format("unsupported format '{}' (csv)", *f));
    }
    if (doc.get("output", "aggregate_window")) {
        const double w = doc.number("output", "aggregate_window");
        if (grid.dim() != 1) throw ValidationError("output.aggregate_window", "only supported on 1D grids");
        if (!(w > 0.0 && w <= grid.extent(0))) {
            throw ValidationError("output.aggregate_window", fmt::format("must be in (0, {}]", grid.extent(0)));
        }
        out.aggregate_window = w;
    }
    return out;
}

} // namespace

SimConfig parse_sim_config(const std::string& text, const std::filesystem::path& base_dir, const std::string& origin)
{
    const IniDoc doc = IniDoc::parse(text, origin);
    doc.allow_sections({"space", "model", "init", "run", "output"});
    const espace::SpaceGrid grid = parse_space(doc);
    SimConfig cfg{grid, {}, {}, {}, {}, text, {}};
    cfg.model = parse_model(doc, grid.dim());
    cfg.init = parse_init(doc, grid, base_dir, cfg.warnings);
    cfg.run = parse_run(doc);
    cfg.output = parse_output(doc, grid);
    return cfg;
}

SimConfig load_sim_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(fmt::format("cannot read config '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_sim_config(ss.str(), path.parent_path(), path.string());
}

} // namespace efluid::cli
