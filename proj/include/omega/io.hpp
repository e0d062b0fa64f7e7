#pragma once

#include <string>

#include <json.hpp>

#include "omega/buchi.hpp"
#include "omega/codings.hpp"
#include "omega/counter_machine.hpp"
#include "omega/relations.hpp"
#include "omega/turing.hpp"

namespace omega::io {

using Json = nlohmann::ordered_json;

/// Throws ParseError with the offending location.
Json parse(const std::string& text);
Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& doc);

Json to_json(const NBA& a);
Json to_json(const DPA& d);
Json to_json(const CounterMachine& m);

Json to_json(const TwoTapeBA& b);
/// Nested objects keyed by "op": nba, cm, image, pattern_complement, union, complement.
Json to_json(const LanguageExpr& e);
Json to_json(const BuchiTM& tm);

NBA nba_from_json(const Json& doc);
DPA dpa_from_json(const Json& doc);
CounterMachine cm_from_json(const Json& doc);
TwoTapeBA rel_from_json(const Json& doc);
LanguageExpr expr_from_json(const Json& doc);
BuchiTM tm_from_json(const Json& doc);

std::string to_dot(const NBA& a);
std::string to_dot(const DPA& d);
std::string to_dot(const CounterMachine& m);
std::string to_dot(const TwoTapeBA& b);

/// Helpers shared by the other document readers.
const Json& field(const Json& doc, const char* key, const std::string& where);
Alphabet alphabet_from_json(const Json& letters, const std::string& where);
Json alphabet_to_json(const Alphabet& a);
char letter_from_json(const Json& j, const std::string& where);

}  // namespace omega::io
