// SPDX-License-Identifier: Apache-2.0
//
// risfd - channel estimation for RIS-assisted full-duplex MIMO
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include "risfd/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace risfd {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ','))
        out.push_back(trim(item));
    return out;
}

struct Bad {
    std::string what;
};

double to_double(const std::string& s)
{
    if (s == "inf" || s == "+inf")
        return INFINITY;
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
        throw Bad{"expected a number, got '" + s + "'"};
    return v;
}

long long to_integer(const std::string& s)
{
    long long v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw Bad{"expected an integer, got '" + s + "'"};
    return v;
}

int to_int(const std::string& s)
{
    const long long v = to_integer(s);
    if (v < -2147483647LL || v > 2147483647LL)
        throw Bad{"integer out of range: '" + s + "'"};
    return static_cast<int>(v);
}

std::uint64_t to_u64(const std::string& s)
{
    std::uint64_t v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw Bad{"expected an unsigned 64-bit integer, got '" + s + "'"};
    return v;
}

bool to_bool(const std::string& s)
{
    if (s == "true" || s == "1")
        return true;
    if (s == "false" || s == "0")
        return false;
    throw Bad{"expected true or false, got '" + s + "'"};
}

PilotScheme to_scheme(const std::string& s)
{
    const int id = to_int(s);
    if (id < 1 || id > 3)
        throw Bad{"scheme must be 1, 2 or 3, got '" + s + "'"};
    return scheme_from_int(id);
}

template <class T, class F>
std::vector<T> to_list(const std::string& s, F conv)
{
    std::vector<T> out;
    for (const auto& item : split_list(s)) {
        if (item.empty())
            throw Bad{"empty list element"};
        out.push_back(conv(item));
    }
    return out;
}

std::string fmt(double v)
{
    if (std::isinf(v))
        return "inf";
    // shortest text that parses back to the same double
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

template <class T, class F>
std::string join(const std::vector<T>& v, F f)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ", ";
        out += f(v[i]);
    }
    return out;
}

using Setter = std::function<void(SimConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = {
        {"M", [](SimConfig& c, const std::string& v) { c.M = to_int(v); }},
        {"K", [](SimConfig& c, const std::string& v) { c.K = to_int(v); }},
        {"N", [](SimConfig& c, const std::string& v) { c.N = to_int(v); }},
        {"T", [](SimConfig& c, const std::string& v) { c.T = to_int(v); }},
        {"d_AR", [](SimConfig& c, const std::string& v) { c.geometry.d_AR = to_double(v); }},
        {"d_UR", [](SimConfig& c, const std::string& v) { c.geometry.d_UR = to_double(v); }},
        {"d_AU", [](SimConfig& c, const std::string& v) { c.geometry.d_AU = to_double(v); }},
        {"ple_AR", [](SimConfig& c, const std::string& v) { c.geometry.ple_AR = to_double(v); }},
        {"ple_UR", [](SimConfig& c, const std::string& v) { c.geometry.ple_UR = to_double(v); }},
        {"ple_AU", [](SimConfig& c, const std::string& v) { c.geometry.ple_AU = to_double(v); }},
        {"kappa_ris", [](SimConfig& c, const std::string& v) { c.kappa_ris = to_double(v); }},
        {"sigma2_trx",
         [](SimConfig& c, const std::string& v) { c.sigma2_tA = c.sigma2_tU = c.sigma2_rA = to_double(v); }},
        {"sigma2_tA", [](SimConfig& c, const std::string& v) { c.sigma2_tA = to_double(v); }},
        {"sigma2_tU", [](SimConfig& c, const std::string& v) { c.sigma2_tU = to_double(v); }},
        {"sigma2_rA", [](SimConfig& c, const std::string& v) { c.sigma2_rA = to_double(v); }},
        {"snr_db", [](SimConfig& c, const std::string& v) { c.snr_db = to_double(v); }},
        {"schemes", [](SimConfig& c, const std::string& v) { c.schemes = to_list<PilotScheme>(v, to_scheme); }},
        {"snr_db_grid", [](SimConfig& c, const std::string& v) { c.snr_db_grid = to_list<double>(v, to_double); }},
        {"kappa_grid", [](SimConfig& c, const std::string& v) { c.kappa_grid = to_list<double>(v, to_double); }},
        {"n_grid", [](SimConfig& c, const std::string& v) { c.n_grid = to_list<int>(v, to_int); }},
        {"trials", [](SimConfig& c, const std::string& v) { c.trials = to_int(v); }},
        {"seed", [](SimConfig& c, const std::string& v) { c.master_seed = to_u64(v); }},
        {"energy_reference", [](SimConfig& c, const std::string& v) { c.energy_reference = to_scheme(v); }},
        {"reference_power", [](SimConfig& c, const std::string& v) { c.reference_power = to_double(v); }},
        {"per_block_offsets", [](SimConfig& c, const std::string& v) { c.signal.per_block_offsets = to_bool(v); }},
        {"gamma_form",
         [](SimConfig& c, const std::string& v) {
             if (v == "moment")
                 c.signal.gamma_form = GammaForm::kMoment;
             else if (v == "as_printed")
                 c.signal.gamma_form = GammaForm::kAsPrinted;
             else
                 throw Bad{"expected moment or as_printed, got '" + v + "'"};
         }},
        {"mse_variant",
         [](SimConfig& c, const std::string& v) {
             if (v == "centered")
                 c.mse_variant = MseVariant::Centered;
             else if (v == "moment")
                 c.mse_variant = MseVariant::Moment;
             else
                 throw Bad{"expected centered or moment, got '" + v + "'"};
         }},
        {"predict_mse", [](SimConfig& c, const std::string& v) { c.predict_mse = to_bool(v); }},
    };
    return table;
}

} // namespace

SimConfig parse_config(std::istream& is, const std::string& source)
{
    SimConfig cfg;
    std::map<std::string, int> seen;
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        const std::string where = source + ":" + std::to_string(lineno);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError(where + ": unknown key '" + key + "'");
        if (auto prev = seen.find(key); prev != seen.end())
            throw ConfigError(where + ": key '" + key + "' already set on line " + std::to_string(prev->second));
        seen[key] = lineno;
        if (value.empty())
            throw ConfigError(where + ": key '" + key + "' has no value");
        try {
            it->second(cfg, value);
        } catch (const Bad& b) {
            throw ConfigError(where + ": key '" + key + "': " + b.what);
        } catch (const std::exception& e) {
            throw ConfigError(where + ": key '" + key + "': " + e.what());
        }
    }
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return cfg;
}

SimConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open configuration file");
    return parse_config(in, path);
}

std::string to_text(const SimConfig& c)
{
    auto scheme_str = [](PilotScheme s) { return std::to_string(scheme_id(s)); };
    auto int_str = [](int v) { return std::to_string(v); };
    std::ostringstream os;
    os << "M = " << c.M << "\n"
       << "K = " << c.K << "\n"
       << "N = " << c.N << "\n"
       << "T = " << c.T << "\n"
       << "d_AR = " << fmt(c.geometry.d_AR) << "\n"
       << "d_UR = " << fmt(c.geometry.d_UR) << "\n"
       << "d_AU = " << fmt(c.geometry.d_AU) << "\n"
       << "ple_AR = " << fmt(c.geometry.ple_AR) << "\n"
       << "ple_UR = " << fmt(c.geometry.ple_UR) << "\n"
       << "ple_AU = " << fmt(c.geometry.ple_AU) << "\n"
       << "kappa_ris = " << fmt(c.kappa_ris) << "\n"
       << "sigma2_tA = " << fmt(c.sigma2_tA) << "\n"
       << "sigma2_tU = " << fmt(c.sigma2_tU) << "\n"
       << "sigma2_rA = " << fmt(c.sigma2_rA) << "\n"
       << "snr_db = " << fmt(c.snr_db) << "\n"
       << "schemes = " << join(c.schemes, scheme_str) << "\n"
       << "snr_db_grid = " << join(c.snr_db_grid, fmt) << "\n"
       << "kappa_grid = " << join(c.kappa_grid, fmt) << "\n"
       << "n_grid = " << join(c.n_grid, int_str) << "\n"
       << "trials = " << c.trials << "\n"
       << "seed = " << c.master_seed << "\n"
       << "energy_reference = " << scheme_id(c.energy_reference) << "\n"
       << "reference_power = " << fmt(c.reference_power) << "\n"
       << "per_block_offsets = " << (c.signal.per_block_offsets ? "true" : "false") << "\n"
       << "gamma_form = " << (c.signal.gamma_form == GammaForm::kMoment ? "moment" : "as_printed") << "\n"
       << "mse_variant = " << (c.mse_variant == MseVariant::Centered ? "centered" : "moment") << "\n"
       << "predict_mse = " << (c.predict_mse ? "true" : "false") << "\n";
    return os.str();
}

std::uint64_t config_hash(const SimConfig& cfg)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : to_text(cfg)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace risfd
