#include "gkl/kernel_spec.hpp"

#include "gkl/error.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace gkl {

namespace {

enum class ParamType { Flag, Integer, Real, KernelName };

struct ParamDef {
    std::string_view name;
    ParamType type;
    double min = -std::numeric_limits<double>::infinity();
    double max = std::numeric_limits<double>::infinity();
    bool exclusive_min = false;
};

std::vector<ParamDef> schema(KernelKind kind) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (kind) {
        case KernelKind::VertexHistogram:
        case KernelKind::EdgeHistogram: return {};
        case KernelKind::ShortestPath: return {{"with_labels", ParamType::Flag}};
        case KernelKind::GraphletSampling:
            return {{"k", ParamType::Integer, 3, 5},
                    {"n_samples", ParamType::Integer, 1, inf},
                    {"exhaustive", ParamType::Flag}};
        case KernelKind::RandomWalk:
            return {{"lambda", ParamType::Real, 0, inf, true},
                    {"match_labels", ParamType::Flag},
                    {"spectral_margin", ParamType::Real, 0, 1, true}};
        case KernelKind::WeisfeilerLehman:
            return {{"h", ParamType::Integer, 0, 1000}, {"base", ParamType::KernelName}};
    }
    return {};
}

std::string kind_str(KernelKind kind) { return std::string(to_string(kind)); }

const ParamValue* lookup(const KernelSpec& spec, std::string_view name) {
    auto it = spec.params.find(std::string(name));
    return it == spec.params.end() ? nullptr : &it->second;
}

void check_value(const ParamDef& def, const ParamValue& value) {
    const std::string name(def.name);
    switch (def.type) {
        case ParamType::Flag:
            if (std::holds_alternative<bool>(value)) return;
            if (const auto* d = std::get_if<double>(&value); d && (*d == 0.0 || *d == 1.0)) return;
            raise(ErrorKind::InvalidSpec, "parameter '" + name + "' must be true or false");
        case ParamType::Integer:
        case ParamType::Real: {
            const auto* d = std::get_if<double>(&value);
            if (!d || !std::isfinite(*d)) raise(ErrorKind::InvalidSpec, "parameter '" + name + "' must be a number");
            if (def.type == ParamType::Integer && std::floor(*d) != *d) {
                raise(ErrorKind::InvalidSpec, "parameter '" + name + "' must be an integer");
            }
            const bool below = def.exclusive_min ? *d <= def.min : *d < def.min;
            if (below || *d > def.max) {
                std::ostringstream os;
                os << "parameter '" << name << "' = " << *d << " outside " << (def.exclusive_min ? "(" : "[")
                   << def.min << ", " << def.max << "]";
                raise(ErrorKind::InvalidSpec, os.str());
            }
            return;
        }
        case ParamType::KernelName: {
            const auto* s = std::get_if<std::string>(&value);
            if (!s) raise(ErrorKind::InvalidSpec, "parameter '" + name + "' must be a kernel name");
            if (parse_kernel_kind(*s) == KernelKind::WeisfeilerLehman) {
                raise(ErrorKind::InvalidSpec, "parameter '" + name + "' cannot nest weisfeiler_lehman");
            }
            return;
        }
    }
}

bool flag(const ParamValue& v) {
    if (const auto* b = std::get_if<bool>(&v)) return *b;
    return std::get<double>(v) != 0.0;
}

double number_or(const KernelSpec& spec, std::string_view name, double fallback) {
    const auto* v = lookup(spec, name);
    return v ? std::get<double>(*v) : fallback;
}

bool flag_or(const KernelSpec& spec, std::string_view name, bool fallback) {
    const auto* v = lookup(spec, name);
    return v ? flag(*v) : fallback;
}

void require_kind(const KernelSpec& spec, KernelKind kind) {
    if (spec.kind != kind) {
        raise(ErrorKind::InvalidSpec, "expected a " + kind_str(kind) + " spec, got " + kind_str(spec.kind));
    }
}

KernelSpec base_spec_of(const KernelSpec& spec) {
    KernelSpec base;
    const auto* name = lookup(spec, "base");
    base.kind = name ? parse_kernel_kind(std::get<std::string>(*name)) : KernelKind::VertexHistogram;
    base.seed = spec.seed;
    constexpr std::string_view prefix = "base.";
    for (const auto& [key, value] : spec.params) {
        if (key.starts_with(prefix)) base.params[key.substr(prefix.size())] = value;
    }
    return base;
}

}  // namespace

std::string_view to_string(KernelKind kind) noexcept {
    switch (kind) {
        case KernelKind::VertexHistogram: return "vertex_histogram";
        case KernelKind::EdgeHistogram: return "edge_histogram";
        case KernelKind::ShortestPath: return "shortest_path";
        case KernelKind::GraphletSampling: return "graphlet_sampling";
        case KernelKind::RandomWalk: return "random_walk";
        case KernelKind::WeisfeilerLehman: return "weisfeiler_lehman";
    }
    return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name) {
    for (auto kind : kAllKernelKinds) {
        if (to_string(kind) == name) return kind;
    }
    raise(ErrorKind::InvalidSpec, "unknown kernel '" + std::string(name) + "'");
}

ParamValue parse_param_value(std::string_view text) {
    if (text == "true") return true;
    if (text == "false") return false;
    const std::string s(text);
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (!s.empty() && end == s.c_str() + s.size() && errno == 0) return d;
    return s;
}

std::string format_param_value(const ParamValue& value) {
    if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
    if (const auto* d = std::get_if<double>(&value)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", *d);
        return buf;
    }
    return std::get<std::string>(value);
}

KernelSpec parse_spec(std::string_view kernel, const std::vector<std::string>& assignments) {
    KernelSpec spec;
    spec.kind = parse_kernel_kind(kernel);
    for (const auto& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0) {
            raise(ErrorKind::InvalidSpec, "parameter assignment '" + a + "' is not of the form name=value");
        }
        spec.params[a.substr(0, eq)] = parse_param_value(std::string_view(a).substr(eq + 1));
    }
    validate(spec);
    return spec;
}

void validate(const KernelSpec& spec) {
    const auto defs = schema(spec.kind);
    for (const auto& [key, value] : spec.params) {
        if (spec.kind == KernelKind::WeisfeilerLehman && key.starts_with("base.")) continue;
        const ParamDef* def = nullptr;
        for (const auto& d : defs) {
            if (d.name == key) def = &d;
        }
        if (!def) {
            raise(ErrorKind::InvalidSpec, "unknown parameter '" + key + "' for kernel " + kind_str(spec.kind));
        }
        check_value(*def, value);
    }
    if (spec.nystrom_components && *spec.nystrom_components == 0) {
        raise(ErrorKind::InvalidSpec, "parameter 'nystrom_components' must be positive");
    }
    if (spec.kind == KernelKind::WeisfeilerLehman) {
        try {
            validate(base_spec_of(spec));
        } catch (const Error& e) {
            raise(ErrorKind::InvalidSpec, "base kernel: " + e.detail());
        }
    }
}

std::string describe(const KernelSpec& spec) {
    std::ostringstream os;
    os << "kernel=" << to_string(spec.kind) << '\n';
    for (const auto& [key, value] : spec.params) os << "param." << key << '=' << format_param_value(value) << '\n';
    os << "normalize=" << (spec.normalize ? "true" : "false") << '\n';
    os << "nystrom_components=" << (spec.nystrom_components ? std::to_string(*spec.nystrom_components) : "none")
       << '\n';
    os << "seed=" << spec.seed << '\n';
    return os.str();
}

ShortestPathParams shortest_path_params(const KernelSpec& spec) {
    require_kind(spec, KernelKind::ShortestPath);
    return {flag_or(spec, "with_labels", true)};
}

GraphletParams graphlet_params(const KernelSpec& spec) {
    require_kind(spec, KernelKind::GraphletSampling);
    GraphletParams p;
    p.k = static_cast<std::size_t>(number_or(spec, "k", 5));
    p.n_samples = static_cast<std::size_t>(number_or(spec, "n_samples", 5000));
    if (const auto* v = lookup(spec, "exhaustive")) p.exhaustive = flag(*v);
    return p;
}

RandomWalkParams random_walk_params(const KernelSpec& spec) {
    require_kind(spec, KernelKind::RandomWalk);
    RandomWalkParams p;
    p.lambda = number_or(spec, "lambda", 0.1);
    p.match_labels = flag_or(spec, "match_labels", false);
    p.spectral_margin = number_or(spec, "spectral_margin", 0.99);
    return p;
}

WeisfeilerLehmanParams weisfeiler_lehman_params(const KernelSpec& spec) {
    require_kind(spec, KernelKind::WeisfeilerLehman);
    WeisfeilerLehmanParams p;
    p.iterations = static_cast<std::size_t>(number_or(spec, "h", 5));
    p.base = std::make_shared<const KernelSpec>(base_spec_of(spec));
    return p;
}

}  // namespace gkl
