#pragma once

// Plain-text serialization of gerbe data over a finite cover.
//
// A dataset file is line oriented.  '#' starts a comment anywhere on a line;
// blank lines are ignored.  The first significant line must be the magic
//
//   gerbeforms-dataset v1
//
// followed by three preamble sections (in any order, all before any data
// section) and then data sections:
//
//   [ring]              dim = 2
//   [crossed-module]    instance = inner     size = 2
//   [cover]             n = 3
//
//   [lambda 0 1]        mat = [[1, x1], [0, 1]]
//                       inv = [[1, -x1], [0, 1]]
//   [m 0]               coeff 1 = [[x2, 0], [0, 0]]
//
// Section kinds and their index shapes (chart indices are 0-based and live
// in [0, n)):
//
//   group-valued: lambda i j (A), g i j k (H), r i (A), theta i j (H),
//                 g1 i j (H) — two keys each, 'mat' and 'inv'.
//   form-valued:  m i (A, deg 1), gamma i j (H, deg 1), B i (H, deg 2),
//                 nu i (A, deg 2), delta i j (H, deg 2), omega3 i (H, deg 3),
//                 e i (H, deg 1), n i (H, deg 2), omega1 i (H, deg 1) —
//                 zero or more 'coeff a1 .. ak' keys with strictly increasing
//                 1-based coordinate tuples; a section with no coeff lines is
//                 the zero form.
//
// Pair-indexed kinds require i != j; the triple-indexed kind requires i != j
// and j != k.  Matrix entries are polynomial literals in x1..xdim over the
// rationals.  Parsing validates shapes, sides, ranges, and duplicates, and
// reports errors with line and column positions; whether stored inverses
// really invert and whether a layer is complete is the job of the layer
// checkers.  Printing is canonical: fixed section order, ascending keys, one
// matrix per line — so parse(print(ds)) reproduces the same bytes.

#include <array>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gerbe.hpp"

namespace gerbeforms {

struct Dataset {
  int dim = 0;
  std::string instance;
  int size = 0;
  int cover_n = 0;

  std::map<ChartPair, GroupMap> lambda;
  std::map<ChartTriple, GroupMap> g;
  std::map<int, LieForm> m;
  std::map<ChartPair, LieForm> gamma;
  std::map<int, LieForm> B;
  std::map<int, LieForm> nu;
  std::map<ChartPair, LieForm> delta;
  std::map<int, LieForm> omega3;
  std::map<int, GroupMap> r;
  std::map<ChartPair, GroupMap> theta;
  std::map<int, LieForm> e;
  std::map<int, LieForm> n;
  std::map<ChartPair, GroupMap> g1;
  std::map<int, LieForm> omega1;

  std::shared_ptr<const CrossedModule> module() const {
    return make_crossed_module(instance, size);
  }

  bool has_cocycle() const { return !lambda.empty() || !g.empty(); }
  bool has_connection() const { return !m.empty() || !gamma.empty(); }
  bool has_curving() const { return !B.empty(); }
  bool has_derived() const {
    return !nu.empty() || !delta.empty() || !omega3.empty();
  }
  bool has_coboundary() const {
    return !r.empty() || !theta.empty() || !e.empty() || !n.empty();
  }
  bool has_bundle() const { return !g1.empty() || !omega1.empty(); }
};

// ---------------------------------------------------------------------------
// Conversions between the dataset bag and the typed layers.
// ---------------------------------------------------------------------------

inline GerbeCocycle dataset_cocycle(const Dataset& ds) {
  GerbeCocycle c;
  c.cover = Cover{ds.cover_n};
  c.dim = ds.dim;
  c.lambda = ds.lambda;
  c.g = ds.g;
  return c;
}

inline ConnectionData dataset_connection(const Dataset& ds) {
  ConnectionData c;
  c.cover = Cover{ds.cover_n};
  c.dim = ds.dim;
  c.m = ds.m;
  c.gamma = ds.gamma;
  return c;
}

inline CurvingData dataset_curving(const Dataset& ds) {
  CurvingData c;
  c.cover = Cover{ds.cover_n};
  c.dim = ds.dim;
  c.B = ds.B;
  return c;
}

inline DerivedCurving dataset_derived(const Dataset& ds) {
  DerivedCurving c;
  c.cover = Cover{ds.cover_n};
  c.dim = ds.dim;
  c.nu = ds.nu;
  c.delta = ds.delta;
  c.omega3 = ds.omega3;
  return c;
}

inline CoboundaryData dataset_coboundary(const Dataset& ds) {
  CoboundaryData c;
  c.cover = Cover{ds.cover_n};
  c.dim = ds.dim;
  c.r = ds.r;
  c.theta = ds.theta;
  c.e = ds.e;
  c.n = ds.n;
  return c;
}

inline BundleData dataset_bundle(const Dataset& ds) {
  BundleData c;
  c.cover = Cover{ds.cover_n};
  c.dim = ds.dim;
  c.g1 = ds.g1;
  c.omega1 = ds.omega1;
  return c;
}

inline void dataset_set_cocycle(Dataset& ds, const GerbeCocycle& c) {
  ds.lambda = c.lambda;
  ds.g = c.g;
}

inline void dataset_set_connection(Dataset& ds, const ConnectionData& c) {
  ds.m = c.m;
  ds.gamma = c.gamma;
}

inline void dataset_set_curving(Dataset& ds, const CurvingData& c) {
  ds.B = c.B;
}

inline void dataset_set_derived(Dataset& ds, const DerivedCurving& c) {
  ds.nu = c.nu;
  ds.delta = c.delta;
  ds.omega3 = c.omega3;
}

inline void dataset_set_coboundary(Dataset& ds, const CoboundaryData& c) {
  ds.r = c.r;
  ds.theta = c.theta;
  ds.e = c.e;
  ds.n = c.n;
}

inline void dataset_set_bundle(Dataset& ds, const BundleData& c) {
  ds.g1 = c.g1;
  ds.omega1 = c.omega1;
}

// ---------------------------------------------------------------------------
// Parsing.
// ---------------------------------------------------------------------------

namespace dataset_detail {

inline const std::string kMagic = "gerbeforms-dataset v1";

struct SectionSpec {
  const char* name;
  int arity;      // number of chart indices in the header
  bool group;     // group-valued (mat/inv) vs form-valued (coeff lines)
  Side side;
  int form_deg;   // degree for form-valued kinds
};

// The full closed set of data section kinds.
inline const std::vector<SectionSpec>& section_specs() {
  static const std::vector<SectionSpec> specs = {
      {"lambda", 2, true, Side::A, 0},  {"g", 3, true, Side::H, 0},
      {"m", 1, false, Side::A, 1},      {"gamma", 2, false, Side::H, 1},
      {"B", 1, false, Side::H, 2},      {"nu", 1, false, Side::A, 2},
      {"delta", 2, false, Side::H, 2},  {"omega3", 1, false, Side::H, 3},
      {"r", 1, true, Side::A, 0},       {"theta", 2, true, Side::H, 0},
      {"e", 1, false, Side::H, 1},      {"n", 1, false, Side::H, 2},
      {"g1", 2, true, Side::H, 0},      {"omega1", 1, false, Side::H, 1},
  };
  return specs;
}

[[noreturn]] inline void fail(int line, int col, const std::string& msg) {
  throw gf_error("line " + std::to_string(line) + ", col " +
                 std::to_string(col) + ": " + msg);
}

inline std::string strip_comment(const std::string& s) {
  auto pos = s.find('#');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

inline bool is_blank(const std::string& s) {
  for (char c : s)
    if (!is_space(c)) return false;
  return true;
}

class DatasetParser {
 public:
  explicit DatasetParser(std::string text) : text_(std::move(text)) {}

  Dataset parse() {
    split_lines();
    bool magic_seen = false;
    for (const auto& [lineno, raw] : lines_) {
      std::string body = strip_comment(raw);
      if (is_blank(body)) continue;
      if (!magic_seen) {
        check_magic(lineno, body);
        magic_seen = true;
        continue;
      }
      size_t first = body.find_first_not_of(" \t\r");
      if (body[first] == '[')
        begin_section(lineno, body, static_cast<int>(first) + 1);
      else
        key_line(lineno, body, static_cast<int>(first) + 1);
    }
    if (!magic_seen) fail(1, 1, "expected magic line '" + kMagic + "'");
    finish_section();
    if (!(saw_ring_ && saw_module_ && saw_cover_))
      fail(last_line_, 1,
           "dataset must contain [ring], [crossed-module], and [cover]");
    require_preamble(last_line_, 1);  // also vets the instance tag and size
    return std::move(ds_);
  }

 private:
  // -- input handling -------------------------------------------------------

  void split_lines() {
    std::string cur;
    int lineno = 1;
    for (char c : text_) {
      if (c == '\n') {
        lines_.emplace_back(lineno++, cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) lines_.emplace_back(lineno, cur);
    last_line_ = lines_.empty() ? 1 : lines_.back().first;
  }

  void check_magic(int lineno, const std::string& body) {
    size_t a = body.find_first_not_of(" \t\r");
    size_t b = body.find_last_not_of(" \t\r");
    if (body.substr(a, b - a + 1) != kMagic)
      fail(lineno, static_cast<int>(a) + 1,
           "expected magic line '" + kMagic + "'");
  }

  // -- tokens ---------------------------------------------------------------

  // Scans an integer at s[pos...]; advances pos.
  int scan_int(int lineno, const std::string& s, size_t& pos) {
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == digits)
      fail(lineno, static_cast<int>(start) + 1, "expected an integer");
    long v = 0;
    try {
      v = std::stol(s.substr(start, pos - start));
    } catch (const std::exception&) {
      fail(lineno, static_cast<int>(start) + 1, "integer out of range");
    }
    if (v < -1000000 || v > 1000000)
      fail(lineno, static_cast<int>(start) + 1, "integer out of range");
    return static_cast<int>(v);
  }

  static void skip_spaces(const std::string& s, size_t& pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r'))
      ++pos;
  }

  std::string scan_word(int lineno, const std::string& s, size_t& pos) {
    size_t start = pos;
    while (pos < s.size() &&
           ((s[pos] >= 'a' && s[pos] <= 'z') ||
            (s[pos] >= 'A' && s[pos] <= 'Z') ||
            (s[pos] >= '0' && s[pos] <= '9') || s[pos] == '-'))
      ++pos;
    if (pos == start)
      fail(lineno, static_cast<int>(start) + 1, "expected a name");
    return s.substr(start, pos - start);
  }

  // -- section headers ------------------------------------------------------

  void begin_section(int lineno, const std::string& body, int col) {
    finish_section();
    size_t pos = static_cast<size_t>(col - 1) + 1;  // past '['
    skip_spaces(body, pos);
    std::string name = scan_word(lineno, body, pos);
    std::vector<int> idx;
    for (;;) {
      skip_spaces(body, pos);
      if (pos >= body.size())
        fail(lineno, static_cast<int>(pos) + 1, "expected ']'");
      if (body[pos] == ']') {
        ++pos;
        break;
      }
      idx.push_back(scan_int(lineno, body, pos));
    }
    skip_spaces(body, pos);
    if (pos != body.size())
      fail(lineno, static_cast<int>(pos) + 1,
           "unexpected text after section header");

    sec_line_ = lineno;
    sec_name_ = name;
    sec_idx_ = idx;
    seen_keys_.clear();
    group_mat_.reset();
    group_inv_.reset();

    if (name == "ring" || name == "crossed-module" || name == "cover") {
      if (!idx.empty())
        fail(lineno, col, "section [" + name + "] takes no indices");
      if (data_seen_)
        fail(lineno, col,
             "section [" + name + "] must precede all data sections");
      bool& flag = name == "ring" ? saw_ring_
                   : name == "crossed-module" ? saw_module_
                                              : saw_cover_;
      if (flag) fail(lineno, col, "duplicate section [" + name + "]");
      flag = true;
      spec_ = nullptr;
      return;
    }

    const SectionSpec* spec = nullptr;
    for (const SectionSpec& s : section_specs())
      if (name == s.name) spec = &s;
    if (spec == nullptr)
      fail(lineno, col, "unknown section kind '" + name + "'");
    if (static_cast<int>(idx.size()) != spec->arity)
      fail(lineno, col, "section [" + name + "] takes " +
                            std::to_string(spec->arity) + " chart indices");
    require_preamble(lineno, col);
    for (int v : idx)
      if (v < 0 || v >= ds_.cover_n)
        fail(lineno, col, "chart index " + std::to_string(v) +
                              " outside cover of size " +
                              std::to_string(ds_.cover_n));
    if (spec->arity >= 2 && idx[0] == idx[1])
      fail(lineno, col,
           "section [" + name + "] requires its first two indices to differ");
    if (spec->arity == 3 && idx[1] == idx[2])
      fail(lineno, col,
           "section [" + name + "] requires its last two indices to differ");
    data_seen_ = true;
    spec_ = spec;
    if (!mark_new_entry())
      fail(lineno, col, "duplicate section [" + header_text() + "]");
    if (!spec->group) {
      int msize = spec->side == Side::H ? module_->h_size() : module_->a_size();
      form_ = LieForm(spec->form_deg, ds_.dim, msize, spec->side);
      store_form();  // a form section with no coeff lines is the zero form
    }
  }

  std::string header_text() const {
    std::string s = sec_name_;
    for (int v : sec_idx_) s += " " + std::to_string(v);
    return s;
  }

  void require_preamble(int lineno, int col) {
    if (!(saw_ring_ && saw_module_ && saw_cover_))
      fail(lineno, col,
           "[ring], [crossed-module], and [cover] must precede data sections");
    if (module_ == nullptr) {
      try {
        module_ = ds_.module();
      } catch (const gf_error& err) {
        fail(lineno, col, std::string(err.what()));
      }
    }
  }

  void finish_section() {
    if (spec_ == nullptr) {
      check_preamble_complete();
      return;
    }
    if (spec_->group) {
      if (!group_mat_ || !group_inv_)
        fail(sec_line_, 1, "section [" + header_text() +
                               "] needs both 'mat' and 'inv' entries");
      GroupMap g{spec_->side, *group_mat_, *group_inv_};
      store_group(g);
    }
    spec_ = nullptr;
  }

  void check_preamble_complete() {
    if (sec_name_ == "ring" && ds_.dim == 0)
      fail(sec_line_, 1, "section [ring] needs a 'dim' entry");
    if (sec_name_ == "crossed-module" && (ds_.instance.empty() || ds_.size == 0))
      fail(sec_line_, 1,
           "section [crossed-module] needs 'instance' and 'size' entries");
    if (sec_name_ == "cover" && ds_.cover_n == 0)
      fail(sec_line_, 1, "section [cover] needs an 'n' entry");
    sec_name_.clear();
  }

  // -- key lines ------------------------------------------------------------

  void key_line(int lineno, const std::string& body, int col) {
    if (sec_name_.empty() && spec_ == nullptr)
      fail(lineno, col, "entry outside of any section");
    auto eq = body.find('=');
    if (eq == std::string::npos)
      fail(lineno, static_cast<int>(body.size()) + 1,
           "expected '=' in a key line");
    std::string key = body.substr(0, eq);
    size_t kend = key.find_last_not_of(" \t\r");
    key = key.substr(0, kend + 1);
    size_t kbegin = key.find_first_not_of(" \t\r");
    key = key.substr(kbegin);
    int vcol = static_cast<int>(eq) + 2;
    std::string value = body.substr(eq + 1);

    if (spec_ == nullptr) {
      preamble_key(lineno, static_cast<int>(kbegin) + 1, key, vcol, value);
      return;
    }
    if (spec_->group) {
      if (key != "mat" && key != "inv")
        fail(lineno, static_cast<int>(kbegin) + 1,
             "expected 'mat' or 'inv' in a group-valued section");
      if (!seen_keys_.insert(key).second)
        fail(lineno, static_cast<int>(kbegin) + 1, "duplicate '" + key + "'");
      int size = spec_->side == Side::H ? module_->h_size() : module_->a_size();
      PolyMat m = parse_matrix(lineno, vcol, value, size);
      (key == "mat" ? group_mat_ : group_inv_) = std::move(m);
      return;
    }
    // Form-valued: coeff a1 .. ak = matrix
    size_t pos = 0;
    std::string word = scan_word(lineno, key, pos);
    if (word != "coeff")
      fail(lineno, static_cast<int>(kbegin) + 1,
           "expected 'coeff' in a form-valued section");
    IndexTuple tuple;
    for (int t = 0; t < spec_->form_deg; ++t) {
      skip_spaces(key, pos);
      tuple.push_back(scan_int(lineno, key, pos));
    }
    skip_spaces(key, pos);
    if (pos != key.size())
      fail(lineno, static_cast<int>(kbegin) + 1,
           "coefficient tuple must have exactly " +
               std::to_string(spec_->form_deg) + " coordinates");
    int prev = 0;
    for (int v : tuple) {
      if (v <= prev || v > ds_.dim)
        fail(lineno, static_cast<int>(kbegin) + 1,
             "coordinate tuple must be strictly increasing within 1.." +
                 std::to_string(ds_.dim));
      prev = v;
    }
    std::string tkey = "coeff";
    for (int v : tuple) tkey += " " + std::to_string(v);
    if (!seen_keys_.insert(tkey).second)
      fail(lineno, static_cast<int>(kbegin) + 1, "duplicate '" + tkey + "'");
    int msize = spec_->side == Side::H ? module_->h_size() : module_->a_size();
    PolyMat m = parse_matrix(lineno, vcol, value, msize);
    form_.add_coeff(tuple, m);
    store_form();
  }

  void preamble_key(int lineno, int kcol, const std::string& key, int vcol,
                    const std::string& value) {
    if (!seen_keys_.insert(key).second)
      fail(lineno, kcol, "duplicate '" + key + "'");
    size_t pos = 0;
    std::string sval = value;
    if (sec_name_ == "ring" && key == "dim") {
      int v = parse_int_value(lineno, vcol, value);
      if (v < 1 || v > 15)
        fail(lineno, vcol, "dim must be between 1 and 15");
      ds_.dim = v;
      return;
    }
    if (sec_name_ == "crossed-module" && key == "instance") {
      skip_spaces(sval, pos);
      size_t vstart = pos;
      std::string word = scan_word(lineno, sval, pos);
      skip_spaces(sval, pos);
      if (pos != sval.size())
        fail(lineno, vcol + static_cast<int>(pos), "unexpected trailing text");
      (void)vstart;
      ds_.instance = word;
      return;
    }
    if (sec_name_ == "crossed-module" && key == "size") {
      int v = parse_int_value(lineno, vcol, value);
      if (v < 1) fail(lineno, vcol, "size must be at least 1");
      ds_.size = v;
      return;
    }
    if (sec_name_ == "cover" && key == "n") {
      int v = parse_int_value(lineno, vcol, value);
      if (v < 1) fail(lineno, vcol, "cover size must be at least 1");
      ds_.cover_n = v;
      return;
    }
    fail(lineno, kcol,
         "unknown entry '" + key + "' in section [" + sec_name_ + "]");
  }

  int parse_int_value(int lineno, int vcol, const std::string& value) {
    size_t pos = 0;
    skip_spaces(value, pos);
    size_t start = pos;
    int v = scan_int(lineno, value, pos);
    skip_spaces(value, pos);
    if (pos != value.size())
      fail(lineno, vcol + static_cast<int>(pos), "unexpected trailing text");
    (void)start;
    return v;
  }

  // -- matrices -------------------------------------------------------------

  PolyMat parse_matrix(int lineno, int vcol, const std::string& value,
                       int size) {
    size_t pos = 0;
    skip_spaces(value, pos);
    if (pos >= value.size() || value[pos] != '[')
      fail(lineno, vcol + static_cast<int>(pos), "expected '[' to open a matrix");
    ++pos;
    PolyMat m(size, size, Poly::zero(ds_.dim));
    for (int row = 0; row < size; ++row) {
      skip_spaces(value, pos);
      if (pos >= value.size() || value[pos] != '[')
        fail(lineno, vcol + static_cast<int>(pos),
             "expected '[' to open matrix row " + std::to_string(row + 1));
      ++pos;
      for (int c = 0; c < size; ++c) {
        skip_spaces(value, pos);
        size_t start = pos;
        while (pos < value.size() && value[pos] != ',' && value[pos] != ']' &&
               value[pos] != '[')
          ++pos;
        if (pos >= value.size() || value[pos] == '[')
          fail(lineno, vcol + static_cast<int>(pos),
               std::string("expected '") + (c + 1 < size ? "," : "]") +
                   "' inside a matrix row");
        std::string chunk = value.substr(start, pos - start);
        try {
          m.at(row, c) = parse_poly(chunk, ds_.dim);
        } catch (const gf_error& err) {
          fail(lineno, vcol + static_cast<int>(start),
               "in polynomial entry: " + std::string(err.what()));
        }
        char want = c + 1 < size ? ',' : ']';
        if (value[pos] != want)
          fail(lineno, vcol + static_cast<int>(pos),
               std::string("matrix row has the wrong width: expected '") +
                   want + "'");
        ++pos;
      }
      skip_spaces(value, pos);
      char want = row + 1 < size ? ',' : ']';
      if (pos >= value.size() || value[pos] != want)
        fail(lineno, vcol + static_cast<int>(pos),
             std::string("matrix has the wrong height: expected '") + want +
                 "'");
      ++pos;
    }
    skip_spaces(value, pos);
    if (pos != value.size())
      fail(lineno, vcol + static_cast<int>(pos),
           "unexpected text after a matrix");
    return m;
  }

  // -- storage --------------------------------------------------------------

  bool mark_new_entry() {
    const std::string& k = sec_name_;
    if (k == "lambda") return ds_.lambda.emplace(pair_key(), GroupMap{}).second;
    if (k == "g") return ds_.g.emplace(triple_key(), GroupMap{}).second;
    if (k == "r") return ds_.r.emplace(sec_idx_[0], GroupMap{}).second;
    if (k == "theta") return ds_.theta.emplace(pair_key(), GroupMap{}).second;
    if (k == "g1") return ds_.g1.emplace(pair_key(), GroupMap{}).second;
    if (k == "m") return ds_.m.emplace(sec_idx_[0], LieForm()).second;
    if (k == "gamma") return ds_.gamma.emplace(pair_key(), LieForm()).second;
    if (k == "B") return ds_.B.emplace(sec_idx_[0], LieForm()).second;
    if (k == "nu") return ds_.nu.emplace(sec_idx_[0], LieForm()).second;
    if (k == "delta") return ds_.delta.emplace(pair_key(), LieForm()).second;
    if (k == "omega3") return ds_.omega3.emplace(sec_idx_[0], LieForm()).second;
    if (k == "e") return ds_.e.emplace(sec_idx_[0], LieForm()).second;
    if (k == "n") return ds_.n.emplace(sec_idx_[0], LieForm()).second;
    if (k == "omega1") return ds_.omega1.emplace(sec_idx_[0], LieForm()).second;
    return false;  // unreachable: kind was validated against the spec table
  }

  void store_group(const GroupMap& g) {
    const std::string& k = sec_name_;
    if (k == "lambda") ds_.lambda[pair_key()] = g;
    if (k == "g") ds_.g[triple_key()] = g;
    if (k == "r") ds_.r[sec_idx_[0]] = g;
    if (k == "theta") ds_.theta[pair_key()] = g;
    if (k == "g1") ds_.g1[pair_key()] = g;
  }

  void store_form() {
    const std::string& k = sec_name_;
    if (k == "m") ds_.m[sec_idx_[0]] = form_;
    if (k == "gamma") ds_.gamma[pair_key()] = form_;
    if (k == "B") ds_.B[sec_idx_[0]] = form_;
    if (k == "nu") ds_.nu[sec_idx_[0]] = form_;
    if (k == "delta") ds_.delta[pair_key()] = form_;
    if (k == "omega3") ds_.omega3[sec_idx_[0]] = form_;
    if (k == "e") ds_.e[sec_idx_[0]] = form_;
    if (k == "n") ds_.n[sec_idx_[0]] = form_;
    if (k == "omega1") ds_.omega1[sec_idx_[0]] = form_;
  }

  ChartPair pair_key() const { return {sec_idx_[0], sec_idx_[1]}; }
  ChartTriple triple_key() const {
    return {sec_idx_[0], sec_idx_[1], sec_idx_[2]};
  }

  std::string text_;
  std::vector<std::pair<int, std::string>> lines_;
  int last_line_ = 1;

  Dataset ds_;
  std::shared_ptr<const CrossedModule> module_;
  bool saw_ring_ = false, saw_module_ = false, saw_cover_ = false;
  bool data_seen_ = false;

  // Current section state.
  const SectionSpec* spec_ = nullptr;
  std::string sec_name_;
  std::vector<int> sec_idx_;
  int sec_line_ = 1;
  std::set<std::string> seen_keys_;
  std::optional<PolyMat> group_mat_, group_inv_;
  LieForm form_;
};

}  // namespace dataset_detail

inline Dataset parse_dataset(const std::string& text) {
  return dataset_detail::DatasetParser(text).parse();
}

// ---------------------------------------------------------------------------
// Canonical printing.
// ---------------------------------------------------------------------------

namespace dataset_detail {

inline std::string matrix_text(const PolyMat& m) {
  std::string out = "[";
  for (int r = 0; r < m.rows(); ++r) {
    if (r) out += ", ";
    out += "[";
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      out += m.at(r, c).to_string();
    }
    out += "]";
  }
  return out + "]";
}

inline void print_group(std::string& out, const std::string& header,
                        const GroupMap& g) {
  out += "\n[" + header + "]\n";
  out += "mat = " + matrix_text(g.mat) + "\n";
  out += "inv = " + matrix_text(g.inv) + "\n";
}

inline void print_form(std::string& out, const std::string& header,
                       const LieForm& w) {
  out += "\n[" + header + "]\n";
  for (const auto& [tuple, m] : w.coeffs()) {
    out += "coeff";
    for (int v : tuple) out += " " + std::to_string(v);
    out += " = " + matrix_text(m) + "\n";
  }
}

}  // namespace dataset_detail

inline std::string print_dataset(const Dataset& ds) {
  if (ds.dim < 1 || ds.size < 1 || ds.cover_n < 1 || ds.instance.empty())
    throw gf_error("dataset is missing ring, crossed-module, or cover data");
  std::string out = dataset_detail::kMagic + "\n";
  out += "\n[ring]\ndim = " + std::to_string(ds.dim) + "\n";
  out += "\n[crossed-module]\ninstance = " + ds.instance +
         "\nsize = " + std::to_string(ds.size) + "\n";
  out += "\n[cover]\nn = " + std::to_string(ds.cover_n) + "\n";

  auto pair_header = [](const char* name, const ChartPair& k) {
    return std::string(name) + " " + std::to_string(k.first) + " " +
           std::to_string(k.second);
  };
  auto chart_header = [](const char* name, int i) {
    return std::string(name) + " " + std::to_string(i);
  };

  for (const auto& [k, v] : ds.lambda)
    dataset_detail::print_group(out, pair_header("lambda", k), v);
  for (const auto& [k, v] : ds.g)
    dataset_detail::print_group(
        out,
        "g " + std::to_string(k[0]) + " " + std::to_string(k[1]) + " " +
            std::to_string(k[2]),
        v);
  for (const auto& [k, v] : ds.m)
    dataset_detail::print_form(out, chart_header("m", k), v);
  for (const auto& [k, v] : ds.gamma)
    dataset_detail::print_form(out, pair_header("gamma", k), v);
  for (const auto& [k, v] : ds.B)
    dataset_detail::print_form(out, chart_header("B", k), v);
  for (const auto& [k, v] : ds.nu)
    dataset_detail::print_form(out, chart_header("nu", k), v);
  for (const auto& [k, v] : ds.delta)
    dataset_detail::print_form(out, pair_header("delta", k), v);
  for (const auto& [k, v] : ds.omega3)
    dataset_detail::print_form(out, chart_header("omega3", k), v);
  for (const auto& [k, v] : ds.r)
    dataset_detail::print_group(out, chart_header("r", k), v);
  for (const auto& [k, v] : ds.theta)
    dataset_detail::print_group(out, pair_header("theta", k), v);
  for (const auto& [k, v] : ds.e)
    dataset_detail::print_form(out, chart_header("e", k), v);
  for (const auto& [k, v] : ds.n)
    dataset_detail::print_form(out, chart_header("n", k), v);
  for (const auto& [k, v] : ds.g1)
    dataset_detail::print_group(out, pair_header("g1", k), v);
  for (const auto& [k, v] : ds.omega1)
    dataset_detail::print_form(out, chart_header("omega1", k), v);
  return out;
}

// ---------------------------------------------------------------------------
// Files.
// ---------------------------------------------------------------------------

inline Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gf_error("cannot open dataset file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_dataset(buf.str());
  } catch (const gf_error& err) {
    throw gf_error(path + ": " + err.what());
  }
}

inline void save_dataset(const std::string& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gf_error("cannot write dataset file: " + path);
  out << print_dataset(ds);
  if (!out) throw gf_error("failed writing dataset file: " + path);
}

}  // namespace gerbeforms
