#include "polarbp/polar_code.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polarbp {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void polar_transform_inplace(std::span<std::uint8_t> v) {
    const size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("polar_transform: length must be a power of two");
    for (size_t half = 1; half < n; half <<= 1)
        for (size_t i = 0; i < n; ++i)
            if (!(i & half)) v[i] ^= v[i + half];
}

Bits polar_transform(Bits v) {
    polar_transform_inplace(v);
    return v;
}

std::vector<double> bhattacharyya_profile(int n, double design_z) {
    if (!is_power_of_two(n)) throw std::invalid_argument("bhattacharyya_profile: n must be a power of two");
    if (!(design_z > 0.0 && design_z < 1.0))
        throw std::invalid_argument("bhattacharyya_profile: design_z must be in (0,1)");
    std::vector<double> z(n, design_z);
    // Strides run largest first; before the stride-h level the values are
    // uniform on aligned 2h blocks, so each pair carries one parameter.
    for (int half = n / 2; half >= 1; half /= 2) {
        for (int i = 0; i < n; ++i) {
            if (i & half) continue;
            const double zi = z[i];
            z[i] = 2.0 * zi - zi * zi;
            z[i + half] = zi * zi;
        }
    }
    return z;
}

std::vector<int> PolarCode::frozen_positions() const {
    std::vector<int> out;
    out.reserve(n - k);
    for (int i = 0; i < n; ++i)
        if (frozen[i]) out.push_back(i);
    return out;
}

PolarCode PolarCode::construct(int n, int k, double design_z) {
    if (!is_power_of_two(n)) throw std::invalid_argument("construct: n must be a power of two");
    if (k < 1 || k > n) throw std::invalid_argument("construct: k must satisfy 1 <= k <= n");
    const std::vector<double> z = bhattacharyya_profile(n, design_z);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&z](int a, int b) {
        if (z[a] != z[b]) return z[a] > z[b];
        return a < b;
    });
    Bits mask(n, 0);
    for (int i = 0; i < n - k; ++i) mask[order[i]] = 1;
    return from_frozen_mask(n, std::move(mask));
}

PolarCode PolarCode::from_frozen_mask(int n, Bits mask) {
    if (!is_power_of_two(n)) throw std::invalid_argument("from_frozen_mask: n must be a power of two");
    if (static_cast<int>(mask.size()) != n)
        throw std::invalid_argument("from_frozen_mask: mask length != n");
    PolarCode code;
    code.n = n;
    code.m = 0;
    while ((1 << code.m) < n) ++code.m;
    code.frozen = std::move(mask);
    code.k = n - static_cast<int>(std::count(code.frozen.begin(), code.frozen.end(), 1));
    if (code.k < 1) throw std::invalid_argument("from_frozen_mask: no information positions");
    return code;
}

Codeword encode(const PolarCode& code, const Bits& info_bits) {
    if (static_cast<int>(info_bits.size()) != code.k)
        throw std::invalid_argument("encode: info length != k");
    Bits u(code.n, 0);
    int next = 0;
    for (int i = 0; i < code.n; ++i)
        if (!code.frozen[i]) u[i] = info_bits[next++];
    Bits x = polar_transform(u);
    return {std::move(u), std::move(x)};
}

Bits extract_info_bits(const PolarCode& code, const Bits& u) {
    if (static_cast<int>(u.size()) != code.n)
        throw std::invalid_argument("extract_info_bits: length != n");
    Bits info;
    info.reserve(code.k);
    for (int i = 0; i < code.n; ++i)
        if (!code.frozen[i]) info.push_back(u[i]);
    return info;
}

std::string format_frozen_set(const PolarCode& code) {
    std::ostringstream out;
    out << "n=" << code.n << "\n";
    out << "k=" << code.k << "\n";
    out << "frozen=";
    bool first = true;
    for (int i = 0; i < code.n; ++i) {
        if (!code.frozen[i]) continue;
        if (!first) out << ",";
        out << (i + 1);
        first = false;
    }
    out << "\n";
    return out.str();
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long long parse_int(const std::string& s, const char* what) {
    size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("frozen-set file: bad ") + what + " value '" + s + "'");
    }
    if (used != s.size())
        throw std::runtime_error(std::string("frozen-set file: bad ") + what + " value '" + s + "'");
    return v;
}

// next non-comment line with the given key, "key=value"
std::string expect_field(std::istream& in, const std::string& key) {
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)) != key)
            throw std::runtime_error("frozen-set file: expected '" + key + "=...', got '" + line + "'");
        return trim(line.substr(eq + 1));
    }
    throw std::runtime_error("frozen-set file: missing '" + key + "=' line");
}

}  // namespace

PolarCode parse_frozen_set(const std::string& text) {
    std::istringstream in(text);
    const long long n = parse_int(expect_field(in, "n"), "n");
    const long long k = parse_int(expect_field(in, "k"), "k");
    const std::string frozen_field = expect_field(in, "frozen");

    if (n < 1 || n > (1ll << 24) || !is_power_of_two(static_cast<int>(n)))
        throw std::runtime_error("frozen-set file: n must be a power of two");
    if (k < 1 || k > n) throw std::runtime_error("frozen-set file: k out of range");

    Bits mask(n, 0);
    long long count = 0;
    long long prev = 0;
    std::istringstream items(frozen_field);
    std::string item;
    while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty()) throw std::runtime_error("frozen-set file: empty frozen index");
        const long long idx = parse_int(item, "frozen index");
        if (idx < 1 || idx > n)
            throw std::runtime_error("frozen-set file: frozen index " + std::to_string(idx) +
                                     " outside 1.." + std::to_string(n));
        if (idx <= prev)
            throw std::runtime_error("frozen-set file: frozen indices must be strictly ascending");
        prev = idx;
        mask[idx - 1] = 1;
        ++count;
    }
    if (count != n - k)
        throw std::runtime_error("frozen-set file: " + std::to_string(count) +
                                 " frozen indices but n-k=" + std::to_string(n - k));
    return PolarCode::from_frozen_mask(static_cast<int>(n), std::move(mask));
}

void save_frozen_set_file(const PolarCode& code, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << format_frozen_set(code);
    if (!out) throw std::runtime_error("write failed: " + path);
}

PolarCode load_frozen_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_frozen_set(buf.str());
}

}  // namespace polarbp
