#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <sstream>

#include "omega/buchi.hpp"
#include "omega/cardinality.hpp"
#include "omega/codings.hpp"
#include "omega/errors.hpp"
#include "omega/io.hpp"
#include "omega/machine_index.hpp"
#include "omega/relations.hpp"
#include "omega/turing.hpp"

namespace omega::cli {

namespace {

using io::Json;

struct Report {
  int code = kYes;
  Json doc = Json::object();
  std::string text;
};

struct Globals {
  bool json = false;
  std::size_t max_steps = 100'000;
  std::uint64_t max_counter = 1'000;
  std::size_t det_budget = 1'000'000;

  SearchBudget search() const { return {max_steps, max_counter}; }
  DeterminizeBudget det() const { return {det_budget}; }
};

// Either a document on stdout or a file plus a short note.
Report emit(const Json& doc, const std::string& out, const std::string& what) {
  Report r;
  if (out.empty()) {
    r.doc = doc;
    r.text = doc.dump(2);
    return r;
  }
  io::write_file(out, doc);
  r.doc = {{"written", out}, {"kind", what}};
  r.text = "wrote " + out;
  return r;
}

Json verdict_json(const CardinalityVerdict& v) {
  Json j;
  j["verdict"] = v.to_string();
  j["class"] = std::string(to_string(v.cls));
  if (v.count) j["count"] = *v.count;
  if (v.fork) j["fork"] = {{"stem", v.fork->stem}, {"x", v.fork->x}, {"y", v.fork->y}};
  return j;
}

int membership_code(Membership m) {
  switch (m) {
    case Membership::In: return kYes;
    case Membership::Out: return kNo;
    case Membership::Unknown: return kUnknown;
  }
  return kUnknown;
}

Report membership_report(Membership m) {
  Report r;
  r.code = membership_code(m);
  r.text = std::string(to_string(m));
  r.doc = {{"membership", r.text}};
  return r;
}

Coding coding_arg(const std::string& s) {
  auto c = parse_coding(s);
  if (!c) throw Error(ErrorCode::InvalidArgument, "unknown coding '" + s + "' (theta, hk, phik, h)");
  return *c;
}

// Input alphabet and parameter of one coding stage.
struct StageArgs {
  std::string coding;
  std::uint64_t param = 0;
  std::string sigma = "01";

  CodingParams params() const {
    CodingParams p;
    p.sigma = Alphabet(sigma);
    Coding c = coding_arg(coding);
    if (c == Coding::Theta) p.S = param ? param : p.S;
    if (c == Coding::HK || c == Coding::PhiK) p.K = param ? param : p.K;
    return p;
  }
};

void add_stage_options(CLI::App* sub, StageArgs& a) {
  sub->add_option("--coding,--kind", a.coding, "theta | hk | phik | h")->required();
  sub->add_option("--param", a.param, "S for theta, K for hk and phik");
  sub->add_option("--sigma", a.sigma, "source alphabet of theta")->capture_default_str();
}

// One automaton-like document named by exactly one of the flags.
struct MachineArgs {
  std::string nba, dpa, cm, rel;
  int given() const { return !nba.empty() + !dpa.empty() + !cm.empty() + !rel.empty(); }
};

void add_machine_options(CLI::App* sub, MachineArgs& m, bool with_rel = false) {
  sub->add_option("--nba", m.nba, "NBA document");
  sub->add_option("--dpa", m.dpa, "DPA document");
  sub->add_option("--cm", m.cm, "counter machine document");
  if (with_rel) sub->add_option("--rel", m.rel, "2-tape automaton document");
}

void require_one(const MachineArgs& m) {
  if (m.given() != 1) throw Error(ErrorCode::InvalidArgument, "give exactly one automaton document");
}

// ------------------------------------------------------------------ verbs

Report card(const Globals& g, const MachineArgs& m) {
  require_one(m);
  CardinalityVerdict v;
  if (!m.nba.empty()) {
    v = nba_cardinality(io::nba_from_json(io::read_file(m.nba)), g.det());
  } else if (!m.dpa.empty()) {
    v = dpa_cardinality(io::dpa_from_json(io::read_file(m.dpa)));
  } else if (!m.cm.empty()) {
    auto machine = io::cm_from_json(io::read_file(m.cm));
    if (!machine.counter_ignoring()) {
      Report r;
      r.code = kUnknown;
      r.text = "UNKNOWN";
      r.doc = {{"verdict", "UNKNOWN"}, {"reason", "the machine tests its counters"}};
      return r;
    }
    v = nba_cardinality(as_nba(machine), g.det());
  } else {
    throw Error(ErrorCode::InvalidArgument, "card takes --nba, --dpa or --cm");
  }
  Report r;
  r.doc = verdict_json(v);
  r.text = v.to_string();
  return r;
}

Report member(const Globals& g, const MachineArgs& m, const std::string& expr, const std::string& word,
              std::size_t scan_limit) {
  if (m.given() + !expr.empty() != 1) throw Error(ErrorCode::InvalidArgument, "give exactly one of --nba, --dpa, --cm, --expr");
  auto w = parse_word_literal(word);
  ExprBudget budget{g.search(), scan_limit};
  if (!m.dpa.empty()) {
    auto d = io::dpa_from_json(io::read_file(m.dpa));
    auto l = w.to_lasso();
    return membership_report(!l ? Membership::Unknown : dpa_membership(d, *l) ? Membership::In : Membership::Out);
  }
  LanguageExpr e = !expr.empty()  ? io::expr_from_json(io::read_file(expr))
                   : !m.nba.empty() ? LanguageExpr::leaf(io::nba_from_json(io::read_file(m.nba)))
                                    : LanguageExpr::leaf(io::cm_from_json(io::read_file(m.cm)));
  return membership_report(expr_membership(e, w, budget));
}

Report empty(const MachineArgs& m) {
  require_one(m);
  std::optional<NBA> a;
  if (!m.nba.empty()) a = io::nba_from_json(io::read_file(m.nba));
  if (!m.dpa.empty()) {
    auto d = io::dpa_from_json(io::read_file(m.dpa));
    auto v = dpa_cardinality(d);
    Report r;
    bool is_empty = v.cls == CardinalityVerdict::Class::Finite && v.count == 0u;
    r.code = is_empty ? kYes : kNo;
    r.text = is_empty ? "EMPTY" : "NONEMPTY";
    r.doc = {{"empty", is_empty}};
    return r;
  }
  if (!m.cm.empty()) {
    auto machine = io::cm_from_json(io::read_file(m.cm));
    if (!machine.counter_ignoring()) {
      Report r;
      r.code = kUnknown;
      r.text = "UNKNOWN";
      r.doc = {{"empty", nullptr}, {"reason", "the machine tests its counters"}};
      return r;
    }
    a = as_nba(machine);
  }
  auto witness = nba_emptiness(*a);
  Report r;
  r.code = witness ? kNo : kYes;
  r.text = witness ? "NONEMPTY " + witness->to_string() : "EMPTY";
  r.doc = {{"empty", !witness}};
  if (witness) r.doc["witness"] = witness->to_string();
  return r;
}

Report combine(const std::string& mode, const std::vector<std::string>& files, const std::string& out) {
  if (files.size() != 2) throw Error(ErrorCode::InvalidArgument, "combine takes two NBA documents");
  CombineMode cm = mode == "union" ? CombineMode::Union : CombineMode::Intersection;
  if (mode != "union" && mode != "intersection") throw Error(ErrorCode::InvalidArgument, "mode is union or intersection");
  auto a = io::nba_from_json(io::read_file(files[0]));
  auto b = io::nba_from_json(io::read_file(files[1]));
  return emit(io::to_json(nba_combine(cm, a, b)), out, "nba");
}

Report determinize_verb(const Globals& g, const std::string& nba, const std::string& out) {
  return emit(io::to_json(determinize(io::nba_from_json(io::read_file(nba)), g.det())), out, "dpa");
}

Report encode_verb(const StageArgs& s, const std::string& word, std::size_t prefix) {
  Coding c = coding_arg(s.coding);
  auto image = encode(c, s.params(), parse_word_literal(word));
  Report r;
  r.doc = {{"word", image.to_string()}, {"prefix", image.prefix(prefix)}};
  r.text = image.to_string() + "\n" + image.prefix(prefix);
  return r;
}

Report decode_verb(const StageArgs& s, const std::string& word, std::size_t scan_limit) {
  Coding c = coding_arg(s.coding);
  auto d = decode(c, s.params(), parse_word_literal(word), scan_limit);
  Report r;
  r.text = d.to_string();
  r.doc = {{"result", r.text}};
  switch (d.status) {
    case DecodeResult::Status::InImage:
      r.doc["status"] = "IN_IMAGE";
      r.doc["preimage"] = d.preimage->to_string();
      break;
    case DecodeResult::Status::Deviates:
      r.code = kNo;
      r.doc["status"] = "DEVIATES";
      r.doc["position"] = d.position.str();
      r.doc["reason"] = d.reason();
      break;
    case DecodeResult::Status::Undetermined:
      r.code = kUnknown;
      r.doc["status"] = "UNDETERMINED";
      break;
  }
  return r;
}

Report recognizer_verb(const StageArgs& s, const std::string& out) {
  auto rec = complement_recognizer(coding_arg(s.coding), s.params());
  if (auto a = std::get_if<NBA>(&rec)) return emit(io::to_json(*a), out, "nba");
  return emit(io::to_json(std::get<CounterMachine>(rec)), out, "cm");
}

Report pipeline_verb(const std::string& machine, const std::string& dir, std::uint64_t S, std::uint64_t K,
                     const std::string& sigma) {
  CodingParams p = CodingParams::primorial(Alphabet(sigma));
  if (S) p.S = S;
  if (K) p.K = K;
  auto pl = pipeline(io::cm_from_json(io::read_file(machine)), p);
  std::filesystem::create_directories(dir);
  Json files = Json::array();
  auto write = [&](const std::string& name, const LanguageExpr& e) {
    auto path = (std::filesystem::path(dir) / (name + ".json")).string();
    io::write_file(path, Json{{"kind", "expr"}, {"expr", io::to_json(e)}});
    files.push_back(path);
  };
  for (const auto& [name, e] : pl.stage_exprs) write(name, e);
  write("final", pl.final_expr);
  write("final_complement", pl.final_complement_expr);
  Report r;
  r.doc = {{"written", files}, {"S", p.S}, {"K", p.K}};
  for (const auto& f : files) r.text += (r.text.empty() ? "wrote " : "\nwrote ") + f.get<std::string>();
  return r;
}

Report index_encode_verb(const std::string& machine) {
  auto z = index_encode(io::cm_from_json(io::read_file(machine)));
  Report r;
  r.text = z.str();
  r.doc = {{"index", r.text}};
  return r;
}

Report index_decode_verb(const std::string& index, const std::string& out) {
  BigNat z;
  try {
    z = BigNat(index);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "index must be a natural number");
  }
  if (z < 0) throw Error(ErrorCode::InvalidArgument, "index must be a natural number");
  return emit(io::to_json(index_decode(z)), out, "cm");
}

Report tm_compile(const std::string& tm, int counters, const std::string& out) {
  auto c = tm_to_counter(io::tm_from_json(io::read_file(tm)));
  if (counters != 2 && counters != 4) throw Error(ErrorCode::InvalidArgument, "--counters is 2 or 4");
  return emit(io::to_json(counters == 4 ? c.four_counter : c.two_counter), out, "cm");
}

Report rel_card(const Globals& g, const std::string& rel) {
  auto v = rel_cardinality(io::rel_from_json(io::read_file(rel)), g.det());
  Report r;
  r.code = v.countable ? kYes : kNo;
  r.doc = verdict_json(v.cardinality);
  r.doc["countable"] = v.countable;
  r.doc["dom"] = verdict_json(v.dom);
  r.doc["im"] = verdict_json(v.im);
  r.text = v.cardinality.to_string() + "\ncountable=" + (v.countable ? "true" : "false") +
           "\ndom=" + v.dom.to_string() + "\nim=" + v.im.to_string();
  return r;
}

Report rel_member(const Globals& g, const std::string& rel, const std::string& u, const std::string& v) {
  auto b = io::rel_from_json(io::read_file(rel));
  auto wu = parse_word_literal(u), wv = parse_word_literal(v);
  auto lu = wu.to_lasso(), lv = wv.to_lasso();
  if (lu && lv) return membership_report(rel_pair_membership(b, *lu, *lv) ? Membership::In : Membership::Out);
  auto s = rel_search(b, wu, wv, g.max_steps);
  auto r = membership_report(s.accepted() ? Membership::In : Membership::Unknown);
  r.doc["explored"] = s.explored;
  return r;
}

Report rel_project(const std::string& rel, int tape, const std::string& out) {
  return emit(io::to_json(rel_projection(io::rel_from_json(io::read_file(rel)), tape)), out, "nba");
}

Report rel_build(const std::string& machine, const std::string& out) {
  return emit(io::to_json(build_R(io::cm_from_json(io::read_file(machine)))), out, "2tba");
}

Report export_dot(const MachineArgs& m) {
  require_one(m);
  Report r;
  if (!m.nba.empty()) r.text = io::to_dot(io::nba_from_json(io::read_file(m.nba)));
  if (!m.dpa.empty()) r.text = io::to_dot(io::dpa_from_json(io::read_file(m.dpa)));
  if (!m.cm.empty()) r.text = io::to_dot(io::cm_from_json(io::read_file(m.cm)));
  if (!m.rel.empty()) r.text = io::to_dot(io::rel_from_json(io::read_file(m.rel)));
  if (!r.text.empty() && r.text.back() == '\n') r.text.pop_back();
  r.doc = {{"dot", r.text}};
  return r;
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
  CLI::App app{"Cardinality and coding toolkit for omega-languages of automata and counter machines", "omega-card"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "print one JSON document");
  app.add_option("--max-steps", g.max_steps, "configurations explored by run searches")->capture_default_str();
  app.add_option("--max-counter", g.max_counter, "largest counter value explored")->capture_default_str();
  app.add_option("--det-budget", g.det_budget, "Safra tree nodes for determinization")->capture_default_str();
  app.fallthrough();

  std::function<Report()> action;
  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  MachineArgs m;
  StageArgs stage;
  std::string expr, word, out, file, index, u, v, mode;
  std::vector<std::string> files;
  std::size_t scan_limit = 4096, prefix = 40;
  std::uint64_t S = 0, K = 0;
  std::string sigma = "01";
  int tape = 1, counters = 2;

  auto* c = sub(&app, "card", "cardinality of the language");
  add_machine_options(c, m);
  c->callback([&] { action = [&] { return card(g, m); }; });

  auto* mem = sub(&app, "member", "membership of a word");
  add_machine_options(mem, m);
  mem->add_option("--expr", expr, "language expression document");
  mem->add_option("--word", word, "word literal, e.g. lasso:01|1 or phik[3]:lasso:|0")->required();
  mem->add_option("--scan-limit", scan_limit, "letters scanned when decoding")->capture_default_str();
  mem->callback([&] { action = [&] { return member(g, m, expr, word, scan_limit); }; });

  auto* em = sub(&app, "empty", "emptiness with a witness");
  add_machine_options(em, m);
  em->callback([&] { action = [&] { return empty(m); }; });

  auto* comb = sub(&app, "combine", "union or intersection of two NBAs");
  comb->add_option("--mode", mode, "union | intersection")->required();
  comb->add_option("files", files, "two NBA documents")->required()->expected(2);
  comb->add_option("--out", out, "output file");
  comb->callback([&] { action = [&] { return combine(mode, files, out); }; });

  auto* det = sub(&app, "determinize", "NBA to DPA");
  det->add_option("--nba", file, "NBA document")->required();
  det->add_option("--out", out, "output file");
  det->callback([&] { action = [&] { return determinize_verb(g, file, out); }; });

  auto* enc = sub(&app, "encode", "image of a word under a coding");
  add_stage_options(enc, stage);
  enc->add_option("--word", word, "word literal")->required();
  enc->add_option("--prefix", prefix, "letters of the image to print")->capture_default_str();
  enc->callback([&] { action = [&] { return encode_verb(stage, word, prefix); }; });

  auto* dec = sub(&app, "decode", "preimage or first deviation");
  add_stage_options(dec, stage);
  dec->add_option("--word", word, "word literal")->required();
  dec->add_option("--scan-limit", scan_limit, "letters scanned for other descriptors")->capture_default_str();
  dec->callback([&] { action = [&] { return decode_verb(stage, word, scan_limit); }; });

  auto* rec = sub(&app, "recognizer", "automaton for the complement of a coding's image");
  add_stage_options(rec, stage);
  rec->add_option("--out", out, "output file");
  rec->callback([&] { action = [&] { return recognizer_verb(stage, out); }; });

  auto* pipe = sub(&app, "pipeline", "expression documents for the coding chain of a 2-counter machine");
  pipe->add_option("--machine", file, "counter machine document")->required();
  pipe->add_option("--out", out, "output directory")->required();
  pipe->add_option("-S,--S", S, "theta parameter (default (3k)^3)");
  pipe->add_option("-K,--K", K, "h_K and phi_K parameter (default 9699690)");
  pipe->add_option("--sigma", sigma, "machine alphabet")->capture_default_str();
  pipe->callback([&] { action = [&] { return pipeline_verb(file, out, S, K, sigma); }; });

  auto* idx = sub(&app, "index", "numbering of real-time one-counter machines");
  idx->require_subcommand(1);
  auto* ie = sub(idx, "encode", "index of a machine");
  ie->add_option("--machine", file, "counter machine document")->required();
  ie->callback([&] { action = [&] { return index_encode_verb(file); }; });
  auto* id = sub(idx, "decode", "machine of an index");
  id->add_option("--index", index, "natural number")->required();
  id->add_option("--out", out, "output file");
  id->callback([&] { action = [&] { return index_decode_verb(index, out); }; });

  auto* tm = sub(&app, "tm", "Turing machine utilities");
  tm->require_subcommand(1);
  auto* tc = sub(tm, "compile", "Büchi TM to a counter machine");
  tc->add_option("--tm", file, "TM document")->required();
  tc->add_option("--counters", counters, "2 or 4")->capture_default_str();
  tc->add_option("--out", out, "output file");
  tc->callback([&] { action = [&] { return tm_compile(file, counters, out); }; });

  auto* rel = sub(&app, "rel", "2-tape Büchi automata");
  rel->require_subcommand(1);
  auto* rc = sub(rel, "card", "cardinality of the relation and its projections");
  rc->add_option("--rel", file, "2tba document")->required();
  rc->callback([&] { action = [&] { return rel_card(g, file); }; });
  auto* rm = sub(rel, "member", "membership of a pair");
  rm->add_option("--rel", file, "2tba document")->required();
  rm->add_option("--u", u, "first word literal")->required();
  rm->add_option("--v", v, "second word literal")->required();
  rm->callback([&] { action = [&] { return rel_member(g, file, u, v); }; });
  auto* rp = sub(rel, "project", "domain or image as an NBA");
  rp->add_option("--rel", file, "2tba document")->required();
  rp->add_option("--tape", tape, "1 or 2")->capture_default_str();
  rp->add_option("--out", out, "output file");
  rp->callback([&] { action = [&] { return rel_project(file, tape, out); }; });
  auto* rb = sub(rel, "build-r", "relation of a real-time one-counter machine");
  rb->add_option("--machine", file, "counter machine document")->required();
  rb->add_option("--out", out, "output file");
  rb->callback([&] { action = [&] { return rel_build(file, out); }; });

  auto* ex = sub(&app, "export", "export formats");
  ex->require_subcommand(1);
  auto* dot = sub(ex, "dot", "Graphviz text");
  add_machine_options(dot, m, true);
  dot->callback([&] { action = [&] { return export_dot(m); }; });

  Outcome o;
  std::ostringstream out_stream, err_stream;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out_stream, err_stream);
    o.exit_code = rc == 0 ? kYes : kInputError;
    o.out = out_stream.str();
    o.err = err_stream.str();
    return o;
  }

  try {
    Report r = action();
    o.exit_code = r.code;
    o.out = (g.json ? r.doc.dump(2) : r.text) + "\n";
  } catch (const Error& e) {
    o.exit_code = kInputError;
    o.err = std::string(e.what()) + "\n";
    if (g.json) o.out = Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2) + "\n";
  } catch (const std::exception& e) {
    o.exit_code = kInputError;
    o.err = std::string("error: ") + e.what() + "\n";
  }
  return o;
}

}  // namespace omega::cli
