#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bishop/expr.hpp"

namespace bishop {

enum class ExampleId { ex1, ex2, ex2c, ex3, ex4, ex5, ex6, ex6b, ex7, ex8, torus_surface };

struct ExampleSpec {
  ExampleId id = ExampleId::ex1;
  double alpha = 2.0;  // ex2
  int p = 2;           // ex4
  int q = 3;
  double eps = 0.1;  // ex6b, ex7, ex8
};

/// Throws InvalidArgument on an unknown name.
ExampleId parse_example_id(std::string_view name);
std::string_view to_string(ExampleId id);
const std::vector<ExampleId>& all_examples();

/// Throws InvalidArgument / NotCoprime when parameters are out of range.
void validate(const ExampleSpec& spec);
RatExpr build_example(const ExampleSpec& spec);

/// Examples in the epsilon-shifted pole family.
bool supports_epsilon(ExampleId id);
/// Remarks attached to reports for this example.
std::vector<std::string> example_notes(const ExampleSpec& spec);

}  // namespace bishop
