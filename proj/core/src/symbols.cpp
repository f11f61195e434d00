#include "symseek/symbols.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace symseek {

namespace {
std::mutex g_mu;
std::vector<std::string> g_names;
std::map<std::string, uint32_t> g_index;
}  // namespace

uint32_t intern_param(const std::string& name) {
    std::lock_guard<std::mutex> lk(g_mu);
    auto it = g_index.find(name);
    if (it != g_index.end()) return it->second;
    uint32_t idx = static_cast<uint32_t>(g_names.size());
    g_names.push_back(name);
    g_index.emplace(name, idx);
    return idx;
}

const std::string& param_name(uint32_t idx) {
    std::lock_guard<std::mutex> lk(g_mu);
    if (idx >= g_names.size()) throw std::out_of_range("unknown param index");
    return g_names[idx];
}

Sym Sym::param(const std::string& name) {
    return make(SymKind::Param, intern_param(name));
}

std::string Sym::name() const {
    switch (kind()) {
        case SymKind::A: return "a" + std::to_string(index());
        case SymKind::B: return "b" + std::to_string(index());
        case SymKind::C: return "c" + std::to_string(index());
        case SymKind::Param: return param_name(index());
    }
    return "?";
}

}  // namespace symseek
