#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xent/alpha.hpp"
#include "xent/families.hpp"
#include "xent/gaussian_process.hpp"
#include "xent/markov.hpp"

namespace xent::parse {

/// Parses the canonical text form `family{key=value,...}`, e.g.
///   gaussian{mu=0,var=1}
///   beta{a=2,b=3}
///   mvgaussian{mu=[0,0],cov=[[1,0],[0,1]]}
/// Throws ParseError on malformed input.
FamilyDescriptor distribution(const std::string& spec);

/// Parses `white{s2=..}`, `ar1{rho=..,s2=..}`, or `table{file=..}` (a
/// two-column "lambda value" text file, linearly interpolated).
gp::SpectralDensity spectrum(const std::string& spec);

/// `shannon` or a positive number different from 1.
AlphaOrder alpha(const std::string& text);

struct MarkovFile {
    markov::MarkovSource source;
    bool renormalized = false;  // rows were within 1e-9 of stochastic and fixed up
};

/// Reads a Markov source from a JSON file holding either a bare row-major
/// array-of-arrays or an object {"transition": [[...]], "initial": [...]}.
/// Rows failing stochasticity by at most 1e-9 are renormalized (flagged);
/// larger violations raise ParseError.
MarkovFile markov_source(const std::string& path);

}  // namespace xent::parse
