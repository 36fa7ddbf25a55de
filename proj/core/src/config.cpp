#include "qbethe/config.hpp"

#include <fstream>

namespace qbethe::cli {

void RunConfig::validate() const {
    if (n < 0) throw UsageError("n must be >= 0");
    if (m < 1) throw UsageError("m must be >= 1");
    if (!(tolerances.newton > 0 && tolerances.eigen > 0 && tolerances.relation > 0))
        throw UsageError("tolerances must be positive");
    if (format != "json" && format != "csv") throw UsageError("format must be json or csv");
    try {
        params.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

void merge_json(RunConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "n")
            cfg.n = value.get<int>();
        else if (key == "m")
            cfg.m = value.get<int>();
        else if (key == "params") {
            for (const auto& [pk, pv] : value.items()) {
                if (pk == "q")
                    cfg.params.q = pv.get<double>();
                else if (pk == "a_minus")
                    cfg.params.a_minus = pv.get<double>();
                else if (pk == "a_hat_minus")
                    cfg.params.a_hat_minus = pv.get<double>();
                else if (pk == "a_plus")
                    cfg.params.a_plus = pv.get<double>();
                else if (pk == "a_hat_plus")
                    cfg.params.a_hat_plus = pv.get<double>();
                else
                    throw UsageError("unknown params key: " + pk);
            }
        } else if (key == "tolerances") {
            for (const auto& [tk, tv] : value.items()) {
                if (tk == "newton")
                    cfg.tolerances.newton = tv.get<double>();
                else if (tk == "eigen")
                    cfg.tolerances.eigen = tv.get<double>();
                else if (tk == "relation")
                    cfg.tolerances.relation = tv.get<double>();
                else
                    throw UsageError("unknown tolerances key: " + tk);
            }
        } else if (key == "suites")
            cfg.suites = value.get<std::vector<std::string>>();
        else if (key == "seed")
            cfg.seed = value.get<std::uint64_t>();
        else if (key == "output") {
            for (const auto& [ok, ov] : value.items()) {
                if (ok == "path")
                    cfg.out_path = ov.get<std::string>();
                else if (ok == "format")
                    cfg.format = ov.get<std::string>();
                else
                    throw UsageError("unknown output key: " + ok);
            }
        } else
            throw UsageError("unknown config key: " + key);
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config parse error: ") + e.what());
    }
    RunConfig cfg;
    merge_json(cfg, j);
    return cfg;
}

}  // namespace qbethe::cli
