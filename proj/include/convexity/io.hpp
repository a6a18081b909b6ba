#pragma once

/**
 * @file io.hpp
 * @brief JSON and CSV serialization with byte-stable output
 *
 * JSON objects are written with sorted keys, two-space indentation and
 * floats in %.17g, so parsing and re-emitting a document reproduces it
 * byte for byte. Non-finite floats become null.
 */

#include "certifier.hpp"
#include "errors.hpp"
#include "kernels.hpp"
#include "sharp_beta.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace convexity::io {

using json = nlohmann::json;

inline std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void indent_to(std::string& out, int depth) { out.append(static_cast<std::size_t>(2 * depth), ' '); }

inline void write(const json& j, std::string& out, int depth) {
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                indent_to(out, depth + 1);
                out += json(key).dump();
                out += ": ";
                write(value, out, depth + 1);
            }
            out += "\n";
            indent_to(out, depth);
            out += "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& value : j) {
                if (!first) out += ",\n";
                first = false;
                indent_to(out, depth + 1);
                write(value, out, depth + 1);
            }
            out += "\n";
            indent_to(out, depth);
            out += "]";
            return;
        }
        case json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_double(v) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace detail

/// Canonical text: sorted keys, %.17g floats, trailing newline.
inline std::string dump(const json& j) {
    std::string out;
    detail::write(j, out, 0);
    out += "\n";
    return out;
}

template<typename T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

inline json to_json(const Kernel& kernel) {
    json j;
    j["kind"] = std::string(kernel.kind());
    std::visit(
        [&j](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Bernardi>) {
                j["c"] = k.c;
            } else if constexpr (std::is_same_v<K, TwoParam>) {
                j["a"] = k.a;
                j["b"] = k.b;
            } else if constexpr (std::is_same_v<K, Komatu>) {
                j["a"] = k.a;
                j["p"] = k.p;
            }
        },
        kernel.variant());
    return j;
}

inline double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw Error(ErrorCode::InvalidArgument, std::string("kernel JSON needs a numeric \"") + key + "\"");
    }
    return j.at(key).get<double>();
}

/// Kernel from {"kind": "bernardi"|"two_param"|"komatu", ...}; "alexander" and "libera" are accepted.
inline Kernel kernel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw Error(ErrorCode::InvalidArgument, "kernel JSON needs a string \"kind\"");
    }
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "bernardi") return Kernel::bernardi(require_number(j, "c"));
    if (kind == "alexander") return Kernel::alexander();
    if (kind == "libera") return Kernel::libera();
    if (kind == "two_param") return Kernel::two_param(require_number(j, "a"), require_number(j, "b"));
    if (kind == "komatu") return Kernel::komatu(require_number(j, "a"), require_number(j, "p"));
    throw Error(ErrorCode::InvalidArgument, "unknown kernel kind \"" + kind + "\"");
}

inline json to_json(const BetaResult& r) {
    json j;
    j["beta"] = r.beta;
    j["integral_I"] = r.integral_I;
    j["mu"] = r.spec.mu_nu.mu;
    j["nu"] = r.spec.mu_nu.nu;
    j["delta"] = r.spec.delta;
    j["kernel"] = to_json(r.kernel);
    j["crosscheck_residual"] = r.crosscheck_residual;
    return j;
}

inline json to_json(const Certificate& c) {
    json j;
    j["pass"] = c.pass;
    j["beta"] = c.beta;
    j["integral_I"] = c.integral_I;
    j["crosscheck_residual"] = c.crosscheck_residual;
    j["mu"] = c.mu_nu.mu;
    j["nu"] = c.mu_nu.nu;
    j["alpha"] = c.params.alpha;
    j["gamma"] = c.params.gamma;
    j["delta"] = c.params.delta;
    j["kernel"] = to_json(c.kernel);
    j["admissibility"] = {
        {"cond_4_8", optional_json(c.admissibility.cond_4_8)},
        {"cond_4_9", optional_json(c.admissibility.cond_4_9)},
        {"cond_4_1", optional_json(c.admissibility.cond_4_1)},
        {"limits", c.admissibility.limits},
        {"kernel_hypothesis", optional_json(c.admissibility.kernel_hypothesis)},
    };
    j["grid"] = {
        {"radius", c.grid_radius},
        {"n_theta", c.n_theta},
        {"min_re", c.grid_min_re},
        {"theta_min", c.grid_theta_min},
    };
    j["sharpness"] = {{"ratio", c.sharpness_ratio}, {"residual", c.sharpness_residual}};
    if (c.duality) {
        j["duality"] = {
            {"min", c.duality->min},
            {"samples", c.duality->samples},
            {"nonnegative", c.duality->min >= -c.config.tol_duality},
        };
    } else {
        j["duality"] = {{"min", nullptr}, {"samples", 0}, {"nonnegative", nullptr}};
    }
    j["tolerances"] = {
        {"grid", c.config.tol_grid},
        {"sharpness", c.config.tol_sharp},
        {"duality", c.config.tol_duality},
    };
    j["series_n"] = c.series_N;
    j["reason_codes"] = c.reason_codes;
    return j;
}

/// Header row plus %.17g rows, comma separated, LF endings.
inline std::string to_csv(const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += std::isfinite(row[i]) ? format_double(row[i]) : "nan";
        }
        out += '\n';
    }
    return out;
}

/// Writes to a sibling temporary file and renames it over path.
inline void atomic_write(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                                 ec.message());
    }
}

}  // namespace convexity::io
