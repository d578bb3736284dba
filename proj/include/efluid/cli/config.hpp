#pragma once

#include "efluid/hydro/conjugate.hpp"
#include "efluid/hydro/generic.hpp"
#include "efluid/hydro/integrator.hpp"

#include <boost/property_tree/ptree.hpp>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace efluid::cli {

inline constexpr const char* version_string = "efluid 0.1.0";

/// INI document with per-section key whitelisting. Every accessor reports
/// problems as ValidationError naming `section.key`.
class IniDoc {
public:
    static IniDoc parse(const std::string& text, const std::string& origin);
    static IniDoc load(const std::filesystem::path& path);

    bool has_section(const std::string& section) const;
    /// Rejects sections outside `sections`.
    void allow_sections(const std::vector<std::string>& sections) const;
    /// Rejects keys of `section` outside `keys`. A trailing '*' matches a prefix.
    void allow_keys(const std::string& section, const std::vector<std::string>& keys) const;

    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    std::string require(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key) const;
    double number_or(const std::string& section, const std::string& key, double fallback) const;
    long long integer(const std::string& section, const std::string& key) const;
    long long integer_or(const std::string& section, const std::string& key, long long fallback) const;
    std::vector<double> numbers(const std::string& section, const std::string& key) const;
    /// Keys of a section in file order.
    std::vector<std::string> keys(const std::string& section) const;

    const std::string& text() const noexcept { return text_; }

private:
    boost::property_tree::ptree tree_;
    std::string text_;
    std::string origin_;
};

std::vector<std::string> split_list(const std::string& text);

espace::SpaceGrid parse_space(const IniDoc& doc);

enum class ModelType { conjugate, generic };
enum class InitMode { plane_wave, gaussian_bump, from_file };

struct ModelConfig {
    ModelType type = ModelType::conjugate;
    std::optional<hydro::ConjugateParams> conjugate;
    std::vector<std::string> fluids;
    std::vector<double> backgrounds;
    hydro::RhsSpec spec;
};

struct InitConfig {
    InitMode mode = InitMode::plane_wave;
    double k = 0.0;
    double amplitude = 0.0;
    int branch = 1;
    std::uint64_t seed = 0;
    bool random_phase = false;
    std::array<double, 3> center{};
    double width = 0.0;
    std::filesystem::path file;
};

struct OutputConfig {
    std::filesystem::path directory;
    std::optional<double> aggregate_window;
};

struct SimConfig {
    espace::SpaceGrid grid;
    ModelConfig model;
    InitConfig init;
    hydro::RunSettings run;
    OutputConfig output;
    /// Verbatim configuration text, echoed into the run manifest.
    std::string text;
    /// Non-fatal adjustments (e.g. wavenumber snapping).
    std::vector<std::string> warnings;
};

/// Fully validates before returning. `base_dir` resolves relative paths.
SimConfig parse_sim_config(const std::string& text, const std::filesystem::path& base_dir, const std::string& origin);
SimConfig load_sim_config(const std::filesystem::path& path);

} // namespace efluid::cli
