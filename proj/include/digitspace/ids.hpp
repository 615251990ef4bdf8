#pragma once

#include <optional>
#include <string>
#include <vector>

namespace digitspace {

// Digit id grammar shared by the derived spaces:
//   tuple digits   <d1,d2,...,dn>
//   hyper digits   [d1,d2,...,dr]
//   lifted digits  K(d)
// Components may themselves be composite; splitting respects nesting.

std::string make_tuple_id(const std::vector<std::string>& parts);
std::string make_hyper_id(const std::vector<std::string>& parts);
std::string make_lifted_id(const std::string& part);

std::optional<std::vector<std::string>> split_tuple_id(const std::string& id);
std::optional<std::vector<std::string>> split_hyper_id(const std::string& id);
std::optional<std::string> split_lifted_id(const std::string& id);

}  // namespace digitspace
