#pragma once

#include <string>
#include <vector>

#include "qec/code.hpp"
#include "qec/simulator.hpp"

namespace qec {

// Front end behind the bposd binary. args excludes the program name.
// Exit codes: 0 success, 1 no-crossing, 2 usage, 3 parse/validation failure.
int run_cli(const std::vector<std::string>& args);

// "0.14:0.20:0.01" (inclusive range) or "0.1,0.12"; values must lie in [0,1].
std::vector<double> parse_eps_list(const std::string& s);
std::vector<int> parse_d_list(const std::string& s);  // "3,5,7"

StabilizerCode build_family(const std::string& family, int d);

// spec grammar: ("bp4" | "mbp4") ["+osd<w>" | "+mosd<w>"]. The digit is the
// OSD4 reprocessing order w, e.g. bp4+osd2 runs BP4 then OSD4-2. alpha
// applies to mbp4 only: a number for fixed alpha, or "eps" for the
// epsilon-scaled rule; empty defaults to 1.6.
DecoderConfig parse_decoder_spec(const std::string& spec, const std::string& alpha,
                                 std::size_t max_iterations);

}  // namespace qec
