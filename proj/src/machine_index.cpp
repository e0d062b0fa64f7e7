#include "omega/machine_index.hpp"

#include <algorithm>

#include "omega/errors.hpp"
#include "omega/io.hpp"

namespace omega {

std::string canonical_machine_text(const CounterMachine& m) {
  io::Json doc = io::to_json(m);
  io::Json states = io::Json::array();
  for (int q = 0; q < m.num_states(); ++q) states.push_back(std::to_string(q));
  doc["states"] = states;
  doc["initial"] = std::to_string(m.initial());
  doc["accepting"] = io::Json::array();
  for (int q = 0; q < m.num_states(); ++q)
    if (m.accepting(q)) doc["accepting"].push_back(std::to_string(q));
  std::vector<std::string> moves;
  for (std::size_t i = 0; i < m.transitions().size(); ++i) {
    auto t = doc["transitions"][i];
    t["from"] = std::to_string(m.transitions()[i].from);
    t["to"] = std::to_string(m.transitions()[i].to);
    moves.push_back(t.dump());
  }
  std::sort(moves.begin(), moves.end());
  moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
  doc["transitions"] = io::Json::array();
  for (const auto& s : moves) doc["transitions"].push_back(io::Json::parse(s));
  return doc.dump();
}

BigNat index_encode(const CounterMachine& m) {
  if (m.k() != 1) throw Error(ErrorCode::NotIndexable, "only one-counter machines are numbered");
  if (!m.real_time() || std::any_of(m.transitions().begin(), m.transitions().end(),
                                    [](const CMTransition& t) { return t.is_lambda(); }))
    throw Error(ErrorCode::NotIndexable, "only real-time machines are numbered");
  BigNat z = 0;
  for (unsigned char b : canonical_machine_text(m)) z = z * 256 + (b + 1);
  return z;
}

CounterMachine empty_indexed_machine() {
  CounterMachine m(Alphabet(alphabets::kOmega), 1, true);
  m.add_state("0");
  return m;
}

CounterMachine index_decode(const BigNat& z) {
  std::string bytes;
  BigNat n = z;
  while (n > 0) {
    unsigned digit = static_cast<unsigned>((n - 1) % 256) + 1;
    bytes.push_back(static_cast<char>(digit - 1));
    n = (n - digit) / 256;
  }
  std::reverse(bytes.begin(), bytes.end());
  try {
    auto m = io::cm_from_json(io::parse(bytes));
    bool lambda = std::any_of(m.transitions().begin(), m.transitions().end(),
                              [](const CMTransition& t) { return t.is_lambda(); });
    if (m.k() != 1 || !m.real_time() || lambda || !validate_machine(m).empty()) return empty_indexed_machine();
    return m;
  } catch (const std::exception&) {
    return empty_indexed_machine();
  }
}

}  // namespace omega
