#pragma once
// Polar code definition: Bhattacharyya-based frozen set construction,
// the GF(2) encoding transform, and the frozen-set file format.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace polarbp {

using Bits = std::vector<std::uint8_t>;

bool is_power_of_two(int v);

// In-place butterfly for x = u * F^{(x)m}, F = [[1,0],[1,1]], natural bit
// order (no bit-reversal). Self-inverse over GF(2). Length must be a power
// of two.
void polar_transform_inplace(std::span<std::uint8_t> v);
Bits polar_transform(Bits v);

// Bhattacharyya parameters of the n synthesized channels for a design
// channel with parameter design_z, natural bit order. Recursion per level:
// z -> 2z - z^2 (worse half, lower indices), z -> z^2 (better half).
std::vector<double> bhattacharyya_profile(int n, double design_z);

struct PolarCode {
    int n = 0;      // block length, power of two
    int m = 0;      // log2(n)
    int k = 0;      // information bits
    Bits frozen;    // length n, 1 marks a frozen source position (0-based)

    bool is_frozen(int pos) const { return frozen[pos] != 0; }
    std::vector<int> frozen_positions() const;  // ascending, 0-based

    // Freeze the n-k positions with the largest Bhattacharyya parameter;
    // ties freeze the lower index first.
    static PolarCode construct(int n, int k, double design_z = 0.5);
    static PolarCode from_frozen_mask(int n, Bits mask);
};

struct Codeword {
    Bits u;  // source word: info bits at unfrozen positions, 0 elsewhere
    Bits x;  // transmitted word, x = u * F^{(x)m}
};

Codeword encode(const PolarCode& code, const Bits& info_bits);
Bits extract_info_bits(const PolarCode& code, const Bits& u);

// Frozen-set file format: "n=<int>", "k=<int>",
// "frozen=<comma-separated 1-based ascending indices>". Lines starting
// with '#' and blank lines are ignored.
std::string format_frozen_set(const PolarCode& code);
PolarCode parse_frozen_set(const std::string& text);
void save_frozen_set_file(const PolarCode& code, const std::string& path);
PolarCode load_frozen_set_file(const std::string& path);

}  // namespace polarbp
