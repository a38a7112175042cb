#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "iforge/spec_file.hpp"

namespace iforge {

struct FixtureSpec {
  std::string name;
  SpecFile spec;  // expected artifacts live in spec.expected
  std::string text;
};

std::vector<std::string> fixture_names();
/// Throws Errc::unknown_fixture.
FixtureSpec load_fixture(std::string_view name);

}  // namespace iforge
