#include "relwb/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "relwb/error.hpp"

namespace relwb {

const Structure* WorkbenchFile::find_structure(std::string_view name) const {
  for (const auto& s : structures)
    if (s.name == name) return &s.structure;
  return nullptr;
}

const ReductDefinition* WorkbenchFile::find_reduct(std::string_view name) const {
  for (const auto& r : reducts)
    if (r.name == name) return &r.reduct;
  return nullptr;
}

const NamedFragmentMap* WorkbenchFile::find_map(std::string_view name) const {
  for (const auto& m : maps)
    if (m.name == name) return &m;
  return nullptr;
}

std::optional<BoundedClass> WorkbenchFile::bounded_class() const {
  if (has_forbidden_block && signature) {
    std::vector<Structure> f;
    for (const auto& name : forbidden) f.push_back(*find_structure(name));
    return BoundedClass(*signature, std::move(f), class_name.value_or(""));
  }
  if (class_name) return get_class(*class_name).cls;
  return std::nullopt;
}

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

bool name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && std::string_view("()!,&|=#:").find(c) == std::string_view::npos;
}

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back(Token{std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

bool is_keyword(std::string_view w) {
  return w == "signature" || w == "structure" || w == "forbidden" || w == "reduct-set" || w == "reduct" ||
         w == "map" || w == "class" || w == "end";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  WorkbenchFile run() {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t nl = text_.find('\n', pos);
      if (nl == std::string_view::npos) nl = text_.size();
      std::string_view line = text_.substr(pos, nl - pos);
      ++line_no_;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      handle(line);
      pos = nl + 1;
    }
    close_block();
    check_class_reference();
    return std::move(file_);
  }

 private:
  enum class Block { none, signature, structure, forbidden, map };

  [[noreturn]] void fail(std::size_t column, const std::string& what) const {
    throw ParseError(line_no_, column, what);
  }

  static bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!name_char(c)) return false;
    return true;
  }

  int parse_int(const Token& t) const {
    int v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) fail(t.column, "expected an integer, got '" + t.text + "'");
    return v;
  }

  const Signature& need_signature(std::size_t column) const {
    if (!file_.signature) fail(column, "no signature declared yet");
    return *file_.signature;
  }

  void handle(std::string_view line) {
    const auto toks = split(line);
    if (toks.empty()) return;
    const auto& head = toks[0].text;
    if (is_keyword(head)) {
      close_block();
      keyword(line, toks);
      return;
    }
    switch (block_) {
      case Block::signature: signature_line(toks); break;
      case Block::structure: atom_line(toks); break;
      case Block::forbidden: forbidden_line(toks); break;
      case Block::map: map_line(toks); break;
      case Block::none: fail(toks[0].column, "unexpected '" + head + "' outside a block");
    }
  }

  void keyword(std::string_view line, const std::vector<Token>& toks) {
    const auto& head = toks[0].text;
    if (head == "end") {
      if (toks.size() > 1) fail(toks[1].column, "unexpected text after end");
      return;
    }
    if (head == "signature") {
      if (toks.size() > 1) fail(toks[1].column, "unexpected text after signature");
      if (file_.signature) fail(toks[0].column, "signature declared twice");
      block_ = Block::signature;
      return;
    }
    if (head == "structure") {
      if (toks.size() != 4 || toks[2].text != "size")
        fail(toks[0].column, "expected: structure NAME size N");
      if (!valid_name(toks[1].text)) fail(toks[1].column, "invalid name '" + toks[1].text + "'");
      if (file_.find_structure(toks[1].text)) fail(toks[1].column, "structure '" + toks[1].text + "' defined twice");
      const int n = parse_int(toks[3]);
      if (n < 0) fail(toks[3].column, "size must be non-negative");
      const auto& sig = need_signature(toks[0].column);
      block_ = Block::structure;
      pending_name_ = toks[1].text;
      pending_size_ = n;
      pending_flat_.assign(sig.size(), {});
      return;
    }
    if (head == "forbidden") {
      if (toks.size() > 1) fail(toks[1].column, "unexpected text after forbidden");
      file_.has_forbidden_block = true;
      block_ = Block::forbidden;
      return;
    }
    if (head == "reduct-set") {
      if (toks.size() != 2 || !valid_name(toks[1].text)) fail(toks[0].column, "expected: reduct-set NAME");
      if (file_.find_reduct(toks[1].text)) fail(toks[1].column, "reduct set '" + toks[1].text + "' defined twice");
      reduct_set_ = toks[1].text;
      reduct_defs_.clear();
      file_.reducts.push_back(NamedReduct{reduct_set_, ReductDefinition(need_signature(toks[0].column), {})});
      return;
    }
    if (head == "reduct") {
      reduct_line(line, toks);
      return;
    }
    if (head == "map") {
      if (toks.size() != 4 || toks[2].text != "on") fail(toks[0].column, "expected: map NAME on STRUCT");
      if (!valid_name(toks[1].text)) fail(toks[1].column, "invalid name '" + toks[1].text + "'");
      if (file_.find_map(toks[1].text)) fail(toks[1].column, "map '" + toks[1].text + "' defined twice");
      const Structure* on = file_.find_structure(toks[3].text);
      if (!on) fail(toks[3].column, "undefined structure '" + toks[3].text + "'");
      block_ = Block::map;
      pending_name_ = toks[1].text;
      pending_on_ = toks[3].text;
      pending_table_.assign(static_cast<std::size_t>(on->size()), -1);
      return;
    }
    if (head == "class") {
      if (toks.size() != 2 || !valid_name(toks[1].text)) fail(toks[0].column, "expected: class NAME");
      file_.class_name = toks[1].text;
      class_column_ = toks[1].column;
      class_line_ = line_no_;
      return;
    }
  }

  void signature_line(const std::vector<Token>& toks) {
    if (toks.size() != 3 || toks[0].text != "rel") fail(toks[0].column, "expected: rel NAME ARITY");
    if (!valid_name(toks[1].text)) fail(toks[1].column, "invalid relation name '" + toks[1].text + "'");
    for (const auto& r : sig_rels_)
      if (r.name == toks[1].text) fail(toks[1].column, "relation '" + toks[1].text + "' declared twice");
    const int arity = parse_int(toks[2]);
    if (arity < 1) fail(toks[2].column, "arity must be at least 1");
    sig_rels_.push_back(RelationSymbol{toks[1].text, arity});
  }

  void atom_line(const std::vector<Token>& toks) {
    const auto& sig = *file_.signature;
    const auto rel = sig.find(toks[0].text);
    if (!rel) fail(toks[0].column, "unknown relation '" + toks[0].text + "'");
    const int arity = sig[*rel].arity;
    if (static_cast<int>(toks.size()) - 1 != arity)
      fail(toks[0].column, "relation " + toks[0].text + " has arity " + std::to_string(arity) + ", got " +
                               std::to_string(toks.size() - 1) + " elements");
    for (std::size_t i = 1; i < toks.size(); ++i) {
      const int v = parse_int(toks[i]);
      if (v < 0 || v >= pending_size_)
        fail(toks[i].column, "element " + std::to_string(v) + " outside the domain of size " +
                                 std::to_string(pending_size_));
      pending_flat_[*rel].push_back(v);
    }
  }

  void forbidden_line(const std::vector<Token>& toks) {
    for (const auto& t : toks) {
      if (!file_.find_structure(t.text)) fail(t.column, "undefined structure '" + t.text + "'");
      file_.forbidden.push_back(t.text);
    }
  }

  void map_line(const std::vector<Token>& toks) {
    if (toks.size() != 3 || toks[1].text != "->") fail(toks[0].column, "expected: i -> j");
    const int x = parse_int(toks[0]);
    const int y = parse_int(toks[2]);
    const int n = static_cast<int>(pending_table_.size());
    if (x < 0 || x >= n) fail(toks[0].column, "element " + std::to_string(x) + " outside the ambient");
    if (y < 0 || y >= n) fail(toks[2].column, "element " + std::to_string(y) + " outside the ambient");
    if (pending_table_[x] >= 0 && pending_table_[x] != y)
      fail(toks[0].column, "element " + std::to_string(x) + " mapped twice");
    pending_table_[x] = y;
  }

  // reduct NAME ARITY := DNF
  void reduct_line(std::string_view line, const std::vector<Token>& toks) {
    if (toks.size() < 4 || toks[3].text.rfind(":=", 0) != 0) fail(toks[0].column, "expected: reduct NAME ARITY := DNF");
    const auto& base = need_signature(toks[0].column);
    if (!valid_name(toks[1].text)) fail(toks[1].column, "invalid relation name '" + toks[1].text + "'");
    const int arity = parse_int(toks[2]);
    if (arity < 1) fail(toks[2].column, "arity must be at least 1");
    if (file_.reducts.empty() || reduct_set_.empty()) {
      reduct_set_ = "reduct";
      if (file_.find_reduct(reduct_set_)) fail(toks[0].column, "reduct lines after the default set was closed");
      file_.reducts.push_back(NamedReduct{reduct_set_, ReductDefinition(base, {})});
    }
    for (const auto& d : reduct_defs_)
      if (d.name == toks[1].text) fail(toks[1].column, "relation '" + toks[1].text + "' defined twice");
    const std::size_t start = toks[3].column - 1 + 2;
    DefinedRelation def{toks[1].text, arity, parse_dnf(line, start, base, arity)};
    reduct_defs_.push_back(std::move(def));
    file_.reducts.back().reduct = ReductDefinition(base, reduct_defs_);
  }

  Dnf parse_dnf(std::string_view line, std::size_t pos, const Signature& base, int arity) const {
    auto skip = [&] {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    };
    auto word = [&] {
      const std::size_t s = pos;
      while (pos < line.size() && name_char(line[pos])) ++pos;
      return std::string(line.substr(s, pos - s));
    };
    auto variable = [&]() -> int {
      skip();
      const std::size_t col = pos + 1;
      const auto w = word();
      if (w.size() < 2 || w[0] != 'x') fail(col, "expected a variable x0, x1, ...");
      int v = 0;
      auto [p, ec] = std::from_chars(w.data() + 1, w.data() + w.size(), v);
      if (ec != std::errc() || p != w.data() + w.size()) fail(col, "malformed variable '" + w + "'");
      if (v >= arity) fail(col, "variable '" + w + "' exceeds the arity");
      return v;
    };
    Dnf dnf;
    bool saw_false = false;
    while (true) {
      Conjunction conj;
      bool conj_false = false;
      while (true) {
        skip();
        const std::size_t col = pos + 1;
        if (pos >= line.size()) fail(col, "expected a literal");
        bool negated = false;
        if (line[pos] == '!') {
          negated = true;
          ++pos;
        }
        skip();
        const std::size_t wcol = pos + 1;
        const auto w = word();
        if (w.empty()) fail(wcol, "expected a literal");
        skip();
        if (pos < line.size() && line[pos] == '(') {
          const auto rel = base.find(w);
          if (!rel) fail(wcol, "unknown relation '" + w + "'");
          ++pos;
          Literal lit{negated ? Literal::Kind::negated_atom : Literal::Kind::atom, *rel, {}};
          while (true) {
            lit.vars.push_back(variable());
            skip();
            if (pos < line.size() && line[pos] == ',') {
              ++pos;
              continue;
            }
            if (pos < line.size() && line[pos] == ')') {
              ++pos;
              break;
            }
            fail(pos + 1, "expected ',' or ')'");
          }
          if (static_cast<int>(lit.vars.size()) != base[*rel].arity)
            fail(wcol, "relation " + w + " has arity " + std::to_string(base[*rel].arity));
          conj.push_back(std::move(lit));
        } else if (!negated && (w == "true" || w == "false")) {
          if (w == "false") conj_false = true;
        } else {
          if (negated) fail(col, "negation applies to atoms only");
          pos = wcol - 1;
          const int a = variable();
          skip();
          Literal::Kind kind;
          if (line.substr(pos, 2) == "!=") {
            kind = Literal::Kind::not_equal;
            pos += 2;
          } else if (pos < line.size() && line[pos] == '=') {
            kind = Literal::Kind::equal;
            pos += 1;
          } else {
            fail(pos + 1, "expected '=' or '!='");
          }
          const int b = variable();
          conj.push_back(Literal{kind, 0, {a, b}});
        }
        skip();
        if (pos < line.size() && line[pos] == '&') {
          ++pos;
          continue;
        }
        break;
      }
      if (conj_false) {
        saw_false = true;
      } else {
        dnf.push_back(std::move(conj));
      }
      skip();
      if (pos < line.size() && line[pos] == '|') {
        ++pos;
        continue;
      }
      if (pos < line.size()) fail(pos + 1, std::string("unexpected '") + line[pos] + "'");
      break;
    }
    (void)saw_false;
    return dnf;
  }

  void close_block() {
    switch (block_) {
      case Block::signature:
        try {
          file_.signature = Signature(sig_rels_);
        } catch (const InputError& e) {
          fail(1, e.what());
        }
        break;
      case Block::structure:
        file_.structures.push_back(NamedStructure{
            pending_name_, Structure::from_flat(*file_.signature, pending_size_, std::move(pending_flat_))});
        break;
      case Block::map:
        file_.maps.push_back(NamedFragmentMap{pending_name_, pending_on_,
                                              FragmentMap(*file_.find_structure(pending_on_), pending_table_)});
        break;
      case Block::forbidden:
      case Block::none: break;
    }
    block_ = Block::none;
  }

  std::string_view text_;
  std::size_t line_no_ = 0;
  WorkbenchFile file_;
  Block block_ = Block::none;
  std::vector<RelationSymbol> sig_rels_;
  std::string pending_name_;
  std::string pending_on_;
  int pending_size_ = 0;
  std::vector<std::vector<Element>> pending_flat_;
  std::vector<Element> pending_table_;
  std::string reduct_set_;
  std::vector<DefinedRelation> reduct_defs_;
  std::size_t class_column_ = 0;
  std::size_t class_line_ = 0;

  void check_class_reference() {
    if (!file_.class_name || file_.has_forbidden_block) return;
    const auto names = corpus_names();
    if (std::find(names.begin(), names.end(), *file_.class_name) == names.end())
      throw ParseError(class_line_, class_column_, "unknown corpus class '" + *file_.class_name + "'");
    if (file_.signature && !(*file_.signature == get_class(*file_.class_name).cls.signature()))
      throw ParseError(class_line_, class_column_, "signature differs from corpus class " + *file_.class_name);
  }
};

}  // namespace

WorkbenchFile parse_file(std::string_view text) {
  Parser p(text);
  return p.run();
}

WorkbenchFile load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_file(ss.str());
}

std::string serialize_signature(const Signature& sig) {
  std::string out = "signature\n";
  for (const auto& r : sig.relations()) out += "rel " + r.name + " " + std::to_string(r.arity) + "\n";
  return out;
}

std::string serialize_structure(std::string_view name, const Structure& s) {
  std::string out = "structure " + std::string(name) + " size " + std::to_string(s.size()) + "\n";
  const auto& sig = s.signature();
  for (std::size_t r = 0; r < sig.size(); ++r)
    for (std::size_t i = 0; i < s.tuple_count(r); ++i) {
      out += sig[r].name;
      for (Element e : s.tuple(r, i)) out += " " + std::to_string(e);
      out += "\n";
    }
  return out;
}

std::string serialize_dnf(const Dnf& formula, const Signature& base) {
  if (formula.empty()) return "false";
  std::string out;
  for (std::size_t c = 0; c < formula.size(); ++c) {
    if (c) out += " | ";
    if (formula[c].empty()) {
      out += "true";
      continue;
    }
    for (std::size_t l = 0; l < formula[c].size(); ++l) {
      const auto& lit = formula[c][l];
      if (l) out += " & ";
      auto var = [](int v) { return "x" + std::to_string(v); };
      switch (lit.kind) {
        case Literal::Kind::atom:
        case Literal::Kind::negated_atom: {
          if (lit.kind == Literal::Kind::negated_atom) out += "!";
          out += base[lit.rel].name + "(";
          for (std::size_t i = 0; i < lit.vars.size(); ++i) out += (i ? "," : "") + var(lit.vars[i]);
          out += ")";
          break;
        }
        case Literal::Kind::equal: out += var(lit.vars[0]) + "=" + var(lit.vars[1]); break;
        case Literal::Kind::not_equal: out += var(lit.vars[0]) + "!=" + var(lit.vars[1]); break;
      }
    }
  }
  return out;
}

std::string serialize_reduct(std::string_view name, const ReductDefinition& r) {
  std::string out = "reduct-set " + std::string(name) + "\n";
  for (const auto& d : r.relations())
    out += "reduct " + d.name + " " + std::to_string(d.arity) + " := " + serialize_dnf(d.formula, r.base()) + "\n";
  return out;
}

std::string serialize_map(std::string_view name, std::string_view on, const FragmentMap& g) {
  std::string out = "map " + std::string(name) + " on " + std::string(on) + "\n";
  for (Element x : g.domain()) out += std::to_string(x) + " -> " + std::to_string(g(x)) + "\n";
  return out;
}

std::string serialize_class(const BoundedClass& c) {
  std::string out = serialize_signature(c.signature());
  std::string names;
  for (std::size_t i = 0; i < c.forbidden().size(); ++i) {
    const std::string name = "F" + std::to_string(i + 1);
    out += serialize_structure(name, c.forbidden()[i]);
    names += name + "\n";
  }
  out += "forbidden\n" + names;
  if (!c.label().empty()) out += "class " + c.label() + "\n";
  return out;
}

std::string serialize_entry(const CorpusEntry& e) {
  std::string out = "# " + e.name + "\n";
  out += serialize_class(e.cls);
  for (const auto& s : e.structures) out += serialize_structure(s.name, s.structure);
  for (const auto& r : e.reducts) out += serialize_reduct(r.name, r.reduct);
  for (const auto& m : e.maps) {
    const auto g = m.make(m.default_size);
    const std::string ambient = m.name + ".ambient";
    out += serialize_structure(ambient, g.ambient());
    out += serialize_map(m.name, ambient, g);
  }
  return out;
}

}  // namespace relwb
