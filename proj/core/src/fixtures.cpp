#include "iforge/fixtures.hpp"

#include "iforge/errors.hpp"

namespace iforge {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_fixtures();
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::embedded_fixtures()) out.emplace_back(name);
  return out;
}

FixtureSpec load_fixture(std::string_view name) {
  for (const auto& [n, text] : detail::embedded_fixtures()) {
    if (n == name) return FixtureSpec{std::string(n), parse_spec_text(text), std::string(text)};
  }
  throw Error(Errc::unknown_fixture, "unknown fixture '" + std::string(name) + "'");
}

}  // namespace iforge
