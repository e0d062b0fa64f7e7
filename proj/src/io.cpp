#include "omega/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "omega/errors.hpp"

namespace omega::io {

namespace {

const std::string kLambda = "λ";

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, (where.empty() ? std::string("/") : where) + ": " + what);
}

std::map<std::string, int> state_table(const Json& states, const std::string& where) {
  if (!states.is_array() || states.empty()) fail(where, "expected a nonempty array of state names");
  std::map<std::string, int> table;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!states[i].is_string()) fail(where + "/" + std::to_string(i), "state names are strings");
    if (!table.emplace(states[i].get<std::string>(), static_cast<int>(i)).second)
      fail(where + "/" + std::to_string(i), "duplicate state '" + states[i].get<std::string>() + "'");
  }
  return table;
}

int state_ref(const std::map<std::string, int>& table, const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a state name");
  auto it = table.find(j.get<std::string>());
  if (it == table.end()) fail(where, "unknown state '" + j.get<std::string>() + "'");
  return it->second;
}

void expect_kind(const Json& doc, const std::string& kind) {
  if (!doc.is_object()) fail("", "expected a JSON object");
  const auto& k = field(doc, "kind", "");
  if (!k.is_string() || k.get<std::string>() != kind) fail("/kind", "expected \"" + kind + "\"");
}

std::vector<int> int_list(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) fail(where + "/" + std::to_string(i), "expected an integer");
    out.push_back(j[i].get<int>());
  }
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << doc.dump(2) << "\n";
}

const Json& field(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) fail(where, std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

Alphabet alphabet_from_json(const Json& letters, const std::string& where) {
  if (!letters.is_array()) fail(where, "expected an array of letters");
  std::string s;
  for (std::size_t i = 0; i < letters.size(); ++i) s.push_back(letter_from_json(letters[i], where + "/" + std::to_string(i)));
  try {
    return Alphabet(s);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Json alphabet_to_json(const Alphabet& a) {
  Json out = Json::array();
  for (char c : a.letters()) out.push_back(std::string(1, c));
  return out;
}

char letter_from_json(const Json& j, const std::string& where) {
  if (!j.is_string() || j.get<std::string>().size() != 1) fail(where, "letters are one-character strings");
  return j.get<std::string>()[0];
}

// ------------------------------------------------------------------ NBA / DPA

Json to_json(const NBA& a) {
  Json doc;
  doc["kind"] = "nba";
  doc["alphabet"] = alphabet_to_json(a.alphabet());
  doc["states"] = Json::array();
  for (int q = 0; q < a.num_states(); ++q) doc["states"].push_back(a.name(q));
  doc["initial"] = a.num_states() ? a.name(a.initial()) : "";
  doc["transitions"] = Json::array();
  for (int q = 0; q < a.num_states(); ++q)
    for (std::size_t l = 0; l < a.alphabet().size(); ++l)
      for (int r : a.successors(q, static_cast<int>(l)))
        doc["transitions"].push_back({{"from", a.name(q)}, {"letter", std::string(1, a.alphabet()[l])}, {"to", a.name(r)}});
  doc["accepting"] = Json::array();
  for (int q = 0; q < a.num_states(); ++q)
    if (a.accepting(q)) doc["accepting"].push_back(a.name(q));
  return doc;
}

Json to_json(const DPA& d) {
  Json doc;
  doc["kind"] = "dpa";
  doc["alphabet"] = alphabet_to_json(d.alphabet());
  doc["states"] = Json::array();
  for (int q = 0; q < d.num_states(); ++q) doc["states"].push_back(d.name(q));
  doc["initial"] = d.name(d.initial());
  doc["transitions"] = Json::array();
  for (int q = 0; q < d.num_states(); ++q)
    for (std::size_t l = 0; l < d.alphabet().size(); ++l)
      doc["transitions"].push_back({{"from", d.name(q)},
                                    {"letter", std::string(1, d.alphabet()[l])},
                                    {"to", d.name(d.next(q, static_cast<int>(l)))},
                                    {"priority", d.priority(q, static_cast<int>(l))}});
  doc["accepting"] = Json::array();
  return doc;
}

NBA nba_from_json(const Json& doc) {
  expect_kind(doc, "nba");
  NBA a(alphabet_from_json(field(doc, "alphabet", ""), "/alphabet"));
  auto table = state_table(field(doc, "states", ""), "/states");
  for (const auto& s : field(doc, "states", "")) a.add_state(s.get<std::string>());
  a.set_initial(state_ref(table, field(doc, "initial", ""), "/initial"));
  const auto& acc = field(doc, "accepting", "");
  if (!acc.is_array()) fail("/accepting", "expected an array of state names");
  for (std::size_t i = 0; i < acc.size(); ++i) a.set_accepting(state_ref(table, acc[i], "/accepting/" + std::to_string(i)));
  const auto& ts = field(doc, "transitions", "");
  if (!ts.is_array()) fail("/transitions", "expected an array");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::string where = "/transitions/" + std::to_string(i);
    char letter = letter_from_json(field(ts[i], "letter", where), where + "/letter");
    if (!a.alphabet().contains(letter)) fail(where + "/letter", std::string("letter '") + letter + "' not in alphabet");
    a.add_transition(state_ref(table, field(ts[i], "from", where), where + "/from"), letter,
                     state_ref(table, field(ts[i], "to", where), where + "/to"));
  }
  return a;
}

DPA dpa_from_json(const Json& doc) {
  expect_kind(doc, "dpa");
  DPA d(alphabet_from_json(field(doc, "alphabet", ""), "/alphabet"));
  auto table = state_table(field(doc, "states", ""), "/states");
  for (const auto& s : field(doc, "states", "")) d.add_state(s.get<std::string>());
  d.set_initial(state_ref(table, field(doc, "initial", ""), "/initial"));
  const auto& ts = field(doc, "transitions", "");
  if (!ts.is_array()) fail("/transitions", "expected an array");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::string where = "/transitions/" + std::to_string(i);
    char letter = letter_from_json(field(ts[i], "letter", where), where + "/letter");
    if (!d.alphabet().contains(letter)) fail(where + "/letter", std::string("letter '") + letter + "' not in alphabet");
    const auto& p = field(ts[i], "priority", where);
    if (!p.is_number_integer() || p.get<int>() < 0) fail(where + "/priority", "expected a natural number");
    d.set_transition(state_ref(table, field(ts[i], "from", where), where + "/from"), letter,
                     state_ref(table, field(ts[i], "to", where), where + "/to"), p.get<int>());
  }
  try {
    d.validate();
  } catch (const Error& e) {
    fail("/transitions", e.what());
  }
  return d;
}

// ------------------------------------------------------------------ counter machines

Json to_json(const CounterMachine& m) {
  Json doc;
  doc["kind"] = "cm";
  doc["k"] = m.k();
  doc["alphabet"] = alphabet_to_json(m.alphabet());
  doc["states"] = Json::array();
  for (int q = 0; q < m.num_states(); ++q) doc["states"].push_back(m.name(q));
  doc["initial"] = m.num_states() ? m.name(m.initial()) : "";
  doc["accepting"] = Json::array();
  for (int q = 0; q < m.num_states(); ++q)
    if (m.accepting(q)) doc["accepting"].push_back(m.name(q));
  doc["real_time"] = m.real_time();
  doc["transitions"] = Json::array();
  for (const auto& t : m.transitions()) {
    doc["transitions"].push_back({{"from", m.name(t.from)},
                                  {"input", t.input ? std::string(1, *t.input) : kLambda},
                                  {"tests", t.tests},
                                  {"to", m.name(t.to)},
                                  {"deltas", t.deltas}});
  }
  return doc;
}

CounterMachine cm_from_json(const Json& doc) {
  expect_kind(doc, "cm");
  const auto& k = field(doc, "k", "");
  if (!k.is_number_integer() || k.get<int>() < 1) fail("/k", "expected a positive integer");
  bool real_time = true;
  if (doc.contains("real_time")) {
    if (!doc["real_time"].is_boolean()) fail("/real_time", "expected a boolean");
    real_time = doc["real_time"].get<bool>();
  }
  CounterMachine m(alphabet_from_json(field(doc, "alphabet", ""), "/alphabet"), k.get<int>(), real_time);
  auto table = state_table(field(doc, "states", ""), "/states");
  for (const auto& s : field(doc, "states", "")) m.add_state(s.get<std::string>());
  m.set_initial(state_ref(table, field(doc, "initial", ""), "/initial"));
  const auto& acc = field(doc, "accepting", "");
  if (!acc.is_array()) fail("/accepting", "expected an array of state names");
  for (std::size_t i = 0; i < acc.size(); ++i) m.set_accepting(state_ref(table, acc[i], "/accepting/" + std::to_string(i)));
  const auto& ts = field(doc, "transitions", "");
  if (!ts.is_array()) fail("/transitions", "expected an array");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::string where = "/transitions/" + std::to_string(i);
    CMTransition t;
    t.from = state_ref(table, field(ts[i], "from", where), where + "/from");
    t.to = state_ref(table, field(ts[i], "to", where), where + "/to");
    const auto& input = field(ts[i], "input", where);
    if (!(input.is_string() && input.get<std::string>() == kLambda)) t.input = letter_from_json(input, where + "/input");
    t.tests = int_list(field(ts[i], "tests", where), where + "/tests");
    t.deltas = int_list(field(ts[i], "deltas", where), where + "/deltas");
    try {
      m.add_transition(std::move(t));
    } catch (const Error& e) {
      fail(where, e.what());
    }
  }
  return m;
}

// ------------------------------------------------------------------ 2-tape automata

namespace {

const std::string kEpsilon = "ε";

Json tape_letter(const std::optional<Letter>& l) { return l ? std::string(1, *l) : kEpsilon; }

std::optional<Letter> tape_letter_from_json(const Json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == kEpsilon) return std::nullopt;
  return letter_from_json(j, where);
}

// Parses a nested document, prefixing error locations with `where`.
template <typename F>
auto nested(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ParseError) throw;
    std::string msg = e.what();
    std::string prefix = std::string(to_string(ErrorCode::ParseError)) + ": ";
    if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
    if (!msg.empty() && msg[0] == '/') throw Error(ErrorCode::ParseError, where + msg);
    throw Error(ErrorCode::ParseError, where + ": " + msg);
  }
}

}  // namespace

Json to_json(const TwoTapeBA& b) {
  Json doc;
  doc["kind"] = "2tba";
  doc["alphabet1"] = alphabet_to_json(b.alphabet(1));
  doc["alphabet2"] = alphabet_to_json(b.alphabet(2));
  doc["states"] = Json::array();
  for (int q = 0; q < b.num_states(); ++q) doc["states"].push_back(b.name(q));
  doc["initial"] = b.num_states() ? b.name(b.initial()) : "";
  doc["transitions"] = Json::array();
  auto ts = b.transitions();
  std::sort(ts.begin(), ts.end());
  for (const auto& t : ts)
    doc["transitions"].push_back(
        {{"from", b.name(t.from)}, {"in1", tape_letter(t.in1)}, {"in2", tape_letter(t.in2)}, {"to", b.name(t.to)}});
  doc["accepting"] = Json::array();
  for (int q = 0; q < b.num_states(); ++q)
    if (b.accepting(q)) doc["accepting"].push_back(b.name(q));
  return doc;
}

TwoTapeBA rel_from_json(const Json& doc) {
  expect_kind(doc, "2tba");
  TwoTapeBA b(alphabet_from_json(field(doc, "alphabet1", ""), "/alphabet1"),
              alphabet_from_json(field(doc, "alphabet2", ""), "/alphabet2"));
  auto table = state_table(field(doc, "states", ""), "/states");
  for (const auto& s : field(doc, "states", "")) b.add_state(s.get<std::string>());
  b.set_initial(state_ref(table, field(doc, "initial", ""), "/initial"));
  const auto& acc = field(doc, "accepting", "");
  if (!acc.is_array()) fail("/accepting", "expected an array of state names");
  for (std::size_t i = 0; i < acc.size(); ++i) b.set_accepting(state_ref(table, acc[i], "/accepting/" + std::to_string(i)));
  const auto& ts = field(doc, "transitions", "");
  if (!ts.is_array()) fail("/transitions", "expected an array");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::string where = "/transitions/" + std::to_string(i);
    TwoTapeBA::Transition t;
    t.from = state_ref(table, field(ts[i], "from", where), where + "/from");
    t.to = state_ref(table, field(ts[i], "to", where), where + "/to");
    t.in1 = tape_letter_from_json(field(ts[i], "in1", where), where + "/in1");
    t.in2 = tape_letter_from_json(field(ts[i], "in2", where), where + "/in2");
    try {
      b.add_transition(t);
    } catch (const Error& e) {
      fail(where, e.what());
    }
  }
  return b;
}

// ------------------------------------------------------------------ expressions

Json to_json(const LanguageExpr& e) {
  using K = LanguageExpr::Kind;
  Json doc;
  switch (e.kind()) {
    case K::Nba:
      doc["op"] = "nba";
      doc["automaton"] = to_json(e.nba());
      break;
    case K::Machine:
      doc["op"] = "cm";
      doc["machine"] = to_json(e.machine());
      break;
    case K::Image:
      doc["op"] = "image";
      doc["coding"] = std::string(to_string(e.coding()));
      doc["param"] = e.param();
      doc["of"] = to_json(e.operands()[0]);
      break;
    case K::PatternComplement:
      doc["op"] = "pattern_complement";
      doc["coding"] = std::string(to_string(e.coding()));
      doc["param"] = e.param();
      doc["input"] = alphabet_to_json(e.input());
      break;
    case K::Union:
      doc["op"] = "union";
      doc["left"] = to_json(e.operands()[0]);
      doc["right"] = to_json(e.operands()[1]);
      break;
    case K::Complement:
      doc["op"] = "complement";
      doc["of"] = to_json(e.operands()[0]);
      break;
  }
  return doc;
}

namespace {

LanguageExpr expr_at(const Json& doc, const std::string& where) {
  if (!doc.is_object()) fail(where, "expected an expression object");
  const auto& op_field = field(doc, "op", where);
  if (!op_field.is_string()) fail(where + "/op", "expected a string");
  const std::string op = op_field.get<std::string>();
  auto coding = [&] {
    const auto& c = field(doc, "coding", where);
    auto parsed = c.is_string() ? parse_coding(c.get<std::string>()) : std::nullopt;
    if (!parsed) fail(where + "/coding", "expected one of theta, hk, phik, h");
    return *parsed;
  };
  auto param = [&]() -> std::uint64_t {
    if (!doc.contains("param")) return 0;
    const auto& p = doc.at("param");
    if (!p.is_number_unsigned()) fail(where + "/param", "expected a natural number");
    return p.get<std::uint64_t>();
  };
  if (op == "nba") return LanguageExpr::leaf(nested(where + "/automaton", [&] { return nba_from_json(field(doc, "automaton", where)); }));
  if (op == "cm") return LanguageExpr::leaf(nested(where + "/machine", [&] { return cm_from_json(field(doc, "machine", where)); }));
  if (op == "image") {
    Coding c = coding();
    return LanguageExpr::image(c, param(), expr_at(field(doc, "of", where), where + "/of"));
  }
  if (op == "pattern_complement") {
    Coding c = coding();
    return LanguageExpr::pattern_complement(c, param(), alphabet_from_json(field(doc, "input", where), where + "/input"));
  }
  if (op == "union")
    return LanguageExpr::union_of(expr_at(field(doc, "left", where), where + "/left"),
                                  expr_at(field(doc, "right", where), where + "/right"));
  if (op == "complement") return LanguageExpr::complement_of(expr_at(field(doc, "of", where), where + "/of"));
  fail(where + "/op", "unknown operator '" + op + "'");
}

}  // namespace

LanguageExpr expr_from_json(const Json& doc) {
  if (doc.is_object() && doc.contains("kind")) {
    expect_kind(doc, "expr");
    return expr_at(field(doc, "expr", ""), "/expr");
  }
  return expr_at(doc, "");
}

// ------------------------------------------------------------------ Turing machines

Json to_json(const BuchiTM& tm) {
  Json doc;
  doc["kind"] = "tm";
  doc["input"] = alphabet_to_json(tm.input);
  doc["tape"] = Json::array();
  for (char c : tm.tape) doc["tape"].push_back(std::string(1, c));
  doc["states"] = tm.states;
  doc["initial"] = tm.states.empty() ? "" : tm.states[tm.initial];
  doc["accepting"] = Json::array();
  for (std::size_t q = 0; q < tm.states.size(); ++q)
    if (tm.accepting[q]) doc["accepting"].push_back(tm.states[q]);
  doc["transitions"] = Json::array();
  for (const auto& [key, act] : tm.delta)
    doc["transitions"].push_back({{"from", tm.states[key.first]},
                                  {"read", std::string(1, key.second)},
                                  {"to", tm.states[act.to]},
                                  {"write", std::string(1, act.write)},
                                  {"move", act.right ? "R" : "L"}});
  return doc;
}

BuchiTM tm_from_json(const Json& doc) {
  expect_kind(doc, "tm");
  BuchiTM tm;
  tm.input = alphabet_from_json(field(doc, "input", ""), "/input");
  const auto& tape = field(doc, "tape", "");
  if (!tape.is_array()) fail("/tape", "expected an array of letters, blank first");
  for (std::size_t i = 0; i < tape.size(); ++i) tm.tape.push_back(letter_from_json(tape[i], "/tape/" + std::to_string(i)));
  auto table = state_table(field(doc, "states", ""), "/states");
  for (const auto& s : field(doc, "states", "")) tm.states.push_back(s.get<std::string>());
  tm.initial = state_ref(table, field(doc, "initial", ""), "/initial");
  tm.accepting.assign(tm.states.size(), false);
  const auto& acc = field(doc, "accepting", "");
  if (!acc.is_array()) fail("/accepting", "expected an array of state names");
  for (std::size_t i = 0; i < acc.size(); ++i) tm.accepting[state_ref(table, acc[i], "/accepting/" + std::to_string(i))] = true;
  const auto& ts = field(doc, "transitions", "");
  if (!ts.is_array()) fail("/transitions", "expected an array");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::string where = "/transitions/" + std::to_string(i);
    int from = state_ref(table, field(ts[i], "from", where), where + "/from");
    char read = letter_from_json(field(ts[i], "read", where), where + "/read");
    BuchiTM::Action act;
    act.to = state_ref(table, field(ts[i], "to", where), where + "/to");
    act.write = letter_from_json(field(ts[i], "write", where), where + "/write");
    const auto& move = field(ts[i], "move", where);
    if (!move.is_string() || (move.get<std::string>() != "L" && move.get<std::string>() != "R"))
      fail(where + "/move", "expected \"L\" or \"R\"");
    act.right = move.get<std::string>() == "R";
    if (!tm.delta.emplace(std::pair{from, read}, act).second) fail(where, "duplicate move for this state and letter");
  }
  try {
    tm.validate();
  } catch (const Error& e) {
    fail("", e.what());
  }
  return tm;
}

// ------------------------------------------------------------------ DOT

std::string to_dot(const NBA& a) {
  std::ostringstream out;
  out << "digraph nba {\n  rankdir=LR;\n  init [shape=point];\n";
  for (int q = 0; q < a.num_states(); ++q)
    out << "  s" << q << " [label=\"" << dot_escape(a.name(q)) << "\", shape=" << (a.accepting(q) ? "doublecircle" : "circle")
        << "];\n";
  if (a.num_states()) out << "  init -> s" << a.initial() << ";\n";
  for (int q = 0; q < a.num_states(); ++q)
    for (std::size_t l = 0; l < a.alphabet().size(); ++l)
      for (int r : a.successors(q, static_cast<int>(l)))
        out << "  s" << q << " -> s" << r << " [label=\"" << dot_escape(std::string(1, a.alphabet()[l])) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const DPA& d) {
  std::ostringstream out;
  out << "digraph dpa {\n  rankdir=LR;\n  init [shape=point];\n";
  for (int q = 0; q < d.num_states(); ++q) out << "  s" << q << " [label=\"" << dot_escape(d.name(q)) << "\", shape=circle];\n";
  if (d.num_states()) out << "  init -> s" << d.initial() << ";\n";
  for (int q = 0; q < d.num_states(); ++q)
    for (std::size_t l = 0; l < d.alphabet().size(); ++l)
      out << "  s" << q << " -> s" << d.next(q, static_cast<int>(l)) << " [label=\""
          << dot_escape(std::string(1, d.alphabet()[l])) << "/" << d.priority(q, static_cast<int>(l)) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const CounterMachine& m) {
  std::ostringstream out;
  out << "digraph cm {\n  rankdir=LR;\n  init [shape=point];\n";
  for (int q = 0; q < m.num_states(); ++q)
    out << "  s" << q << " [label=\"" << dot_escape(m.name(q)) << "\", shape=" << (m.accepting(q) ? "doublecircle" : "circle")
        << "];\n";
  if (m.num_states()) out << "  init -> s" << m.initial() << ";\n";
  for (const auto& t : m.transitions()) {
    std::string label = t.input ? std::string(1, *t.input) : kLambda;
    label += " [";
    for (int v : t.tests) label += std::to_string(v);
    label += "] ";
    for (std::size_t c = 0; c < t.deltas.size(); ++c) {
      if (c) label += ",";
      label += (t.deltas[c] > 0 ? "+" : "") + std::to_string(t.deltas[c]);
    }
    out << "  s" << t.from << " -> s" << t.to << " [label=\"" << dot_escape(label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const TwoTapeBA& b) {
  std::ostringstream out;
  out << "digraph tba2 {\n  rankdir=LR;\n  init [shape=point];\n";
  for (int q = 0; q < b.num_states(); ++q)
    out << "  s" << q << " [label=\"" << dot_escape(b.name(q)) << "\", shape=" << (b.accepting(q) ? "doublecircle" : "circle")
        << "];\n";
  if (b.num_states()) out << "  init -> s" << b.initial() << ";\n";
  for (const auto& t : b.transitions()) {
    std::string label = (t.in1 ? std::string(1, *t.in1) : kEpsilon) + "/" + (t.in2 ? std::string(1, *t.in2) : kEpsilon);
    out << "  s" << t.from << " -> s" << t.to << " [label=\"" << dot_escape(label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace omega::io
