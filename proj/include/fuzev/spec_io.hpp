#ifndef FUZEV_SPEC_IO_HPP
#define FUZEV_SPEC_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fuzev/model.hpp"

namespace fuzev {

// Model-spec documents, one model per file. '#' starts a comment.
//
//   model fuzzy <name>
//   set <covariate> [lo,hi] <label>...
//   output <name> [lo,hi] <label>...
//   rule IF <set> IS <label> (AND|OR <set> IS <label>)* THEN <output> IS <label>
//
//   model glm <name>
//   covariates <name>...
//   term <exponent per covariate>...
//   prior <lo> <hi>
//
// Either kind may end with `sigma estimated <lo> <hi>` or `sigma fixed <value>`;
// the default is `sigma estimated 0.01 50`.
ModelSpec parse_model_spec(std::istream& in);
ModelSpec parse_model_spec_text(const std::string& text);
ModelSpec read_model_spec(const std::filesystem::path& path);

}  // namespace fuzev

#endif
