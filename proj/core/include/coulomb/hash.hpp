#pragma once

#include <string>
#include <string_view>

namespace coulomb {

std::string sha1_hex(std::string_view data);
// git blob id: sha1("blob <size>\0" + content)
std::string content_hash(std::string_view content);

}  // namespace coulomb
