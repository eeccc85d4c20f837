#include "cqg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cqg/caps.hpp"
#include "cqg/catalog.hpp"
#include "cqg/errors.hpp"
#include "cqg/haar.hpp"
#include "cqg/kernels.hpp"
#include "cqg/rng.hpp"

namespace cqg::cli {

using Json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + sep.size();
  }
  return out;
}

std::uint32_t parse_uint(const std::string& s, const char* what) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || v > 1'000'000)
    throw ParseError(std::string("bad ") + what + " '" + s + "'");
  return static_cast<std::uint32_t>(v);
}

std::string decimal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json number(const Scalar& s) {
  Json j;
  j["decimal"] = s.to_decimal();
  if (s.is_exact()) {
    j["num"] = s.exact().get_num().get_str();
    j["den"] = s.exact().get_den().get_str();
  }
  return j;
}

Json number(double v) { return Json{{"decimal", decimal(v)}}; }

Json caps_json() {
  const Caps& c = caps();
  return Json{{"max_ground_size", c.max_ground_size},
              {"max_word_degree", c.max_word_degree},
              {"max_coproduct_pairs", c.max_coproduct_pairs},
              {"max_transfer_entries", c.max_transfer_entries},
              {"max_syllables", c.max_syllables},
              {"max_terms_per_generator", c.max_terms_per_generator},
              {"max_expansion_terms", c.max_expansion_terms},
              {"max_direct_average", c.max_direct_average},
              {"max_ucp_dimension", c.max_ucp_dimension},
              {"exact_power_dimension", c.exact_power_dimension}};
}

std::string pattern_string(const std::vector<bool>& p) {
  std::string s;
  for (bool b : p) s += b ? '1' : '0';
  return s;
}

std::vector<bool> parse_pattern(const std::string& s, std::size_t degree) {
  if (s.empty()) return std::vector<bool>(degree, false);
  if (s.size() != degree) throw ParseError("pattern length must equal --degree");
  std::vector<bool> p;
  for (char c : s) {
    if (c != '0' && c != '1') throw ParseError("pattern uses 0 (plain) and 1 (starred)");
    p.push_back(c == '1');
  }
  return p;
}

// Writes through a temporary file in the same directory, then renames, so
// readers never see a partial report.
void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ArgumentError("cannot write " + tmp.string());
    f << text;
    if (!f.flush()) throw ArgumentError("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

void emit(const std::string& out_path, const std::string& text, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_atomic(out_path, text);
  }
}

GroupSpec require_family(const GroupSpec& g, Family f, const char* what) {
  if (g.family() != f) throw ArgumentError(std::string(what) + ", got " + g.name());
  return g;
}

Word random_unitary_word(std::uint32_t n, std::size_t max_degree, const GroupSpec& g,
                         std::mt19937_64& rng) {
  const std::size_t d = 1 + rng() % max_degree;
  std::vector<bool> stars(d);
  if (d % 2 == 0 && (rng() & 1u)) {
    for (std::size_t i = 0; i < d / 2; ++i) stars[i] = true;
    std::shuffle(stars.begin(), stars.end(), rng);
  } else {
    for (std::size_t i = 0; i < d; ++i) stars[i] = rng() & 1u;
  }
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < d; ++i)
    letters.push_back(make_letter(g, 0, 1 + static_cast<std::uint32_t>(rng() % n),
                                  1 + static_cast<std::uint32_t>(rng() % n), stars[i]));
  return Word(std::move(letters));
}

}  // namespace

ConvergencePair convergence_pair(std::string_view name, const GroupSpec& group) {
  if (name == "haar") {
    auto h = haar_state(group);
    return {"haar", h, h, h};
  }
  require_family(group, Family::OPlus, "this pair needs o+:<n>");
  const std::uint32_t n = group.n();
  auto h = haar_state(group);
  if (name == "classical+fixlast") {
    if (n < 2) throw ArgumentError("classical+fixlast needs n >= 2");
    return {"classical+fixlast",
            pullback(haar_state(make_group(Family::OClassical, n)), morphism_abelianize(n)),
            pullback(haar_state(make_group(Family::OPlus, n - 1)), morphism_fix_last(n)), h};
  }
  if (name == "fixlast2") {
    if (n < 3) throw ArgumentError("fixlast2 needs n >= 3");
    // Fixed vectors e_n and e_{n-1}: linearly independent and orthogonal.
    auto inner = haar_state(make_group(Family::OPlus, n - 1));
    return {"fixlast2", pullback(inner, morphism_fix_last(n)),
            pullback(inner, morphism_fix_vector(n, quarter_turn(n, n - 1))), h};
  }
  if (name == "perm+blocksplit") {
    if (n % 2 != 0 || n < 4) throw ArgumentError("perm+blocksplit needs o+:2m with m >= 2");
    const auto half = make_group(Family::OPlus, n / 2);
    return {"perm+blocksplit",
            pullback(haar_state(make_group(Family::SClassical, n)), morphism_to_perm(n)),
            pullback(haar_state(make_free_product({half, half})), morphism_block_split(n / 2)),
            h};
  }
  throw ArgumentError("unknown pair '" + std::string(name) +
                      "' (classical+fixlast, fixlast2, perm+blocksplit, haar)");
}

Morphism parse_morphism(std::string_view text) {
  std::optional<Morphism> acc;
  for (const auto& part : split(text, "+")) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw ParseError("morphism '" + part + "' needs name:arg");
    const std::string name = part.substr(0, colon);
    const std::uint32_t arg = parse_uint(part.substr(colon + 1), "morphism size");
    Morphism m = [&] {
      if (name == "abelianize") return morphism_abelianize(arg);
      if (name == "fixlast") return morphism_fix_last(arg);
      if (name == "perm") return morphism_to_perm(arg);
      if (name == "blocksplit") return morphism_block_split(arg);
      if (name == "usplit") return morphism_unitary_split(arg);
      throw ParseError("unknown morphism '" + name + "'");
    }();
    acc = acc ? compose(*acc, m) : m;
  }
  return *acc;
}

StateOracle parse_trace_spec(std::string_view text) {
  std::optional<StateOracle> acc;
  for (const auto& atom : split(text, " x ")) {
    const auto at = atom.find('@');
    const std::string head = atom.substr(0, at);
    const auto colon = head.find(':');
    if (colon == std::string::npos) throw ParseError("trace atom '" + atom + "' needs kind:group");
    const std::string kind = head.substr(0, colon);
    const GroupSpec g = parse_group(head.substr(colon + 1));
    StateOracle s = [&] {
      if (kind == "haar") return haar_state(g);
      if (kind == "counit") return counit_state(g);
      throw ParseError("unknown trace kind '" + kind + "'");
    }();
    if (at != std::string::npos) s = pullback(s, parse_morphism(atom.substr(at + 1)));
    acc = acc ? convolve(*acc, s) : s;
  }
  return *acc;
}

UcpMap parse_net_element(std::string_view text, std::size_t size, std::uint64_t seed) {
  std::optional<UcpMap> acc;
  std::uint64_t index = 0;
  for (const auto& atom : split(text, " x ")) {
    const std::uint64_t s = stream_seed(seed, index++);
    const auto at = atom.find('@');
    const std::string head = atom.substr(0, at);
    const auto colon = head.find(':');
    const std::string kind = head.substr(0, colon);
    UcpMap m = [&] {
      if (kind == "flip") {
        if (colon != std::string::npos) throw ParseError("flip takes no group");
        return rep_ucp(make_group(Family::OPlus, 2),
                       flip_family_images(random_self_adjoint_unitary(size, s)));
      }
      if (colon == std::string::npos) throw ParseError("net atom '" + atom + "' needs kind:group");
      const GroupSpec g = parse_group(head.substr(colon + 1));
      if (kind == "sample") return classical_sampling_ucp(g, size, s);
      if (kind == "char") return rep_ucp(g, character_images(g, haar_orthogonal(g.n(), s)));
      throw ParseError("unknown net kind '" + kind + "'");
    }();
    if (at != std::string::npos) m = pullback_ucp(m, parse_morphism(atom.substr(at + 1)));
    acc = acc ? convolve_ucp(*acc, m) : m;
  }
  return *acc;
}

std::vector<Word> read_words_file(const std::string& path, const GroupSpec& group) {
  std::ifstream f(path);
  if (!f) throw ArgumentError("cannot read words file " + path);
  std::vector<Word> words;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    try {
      words.push_back(parse_word(line, group));
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return words;
}

UsplitReport usplit_check(std::uint32_t n, std::size_t max_degree, std::size_t sample,
                          std::uint64_t seed, std::size_t full_limit) {
  const GroupSpec g = make_group(Family::UPlus, n);
  const Morphism pi = morphism_unitary_split(n);
  const StateOracle rhs = pullback(haar_state(pi.target()), pi);
  auto lhs = haar_oracle(g);

  UsplitReport r;
  r.n = n;
  r.max_degree = max_degree;
  r.max_discrepancy = Scalar(0);
  const std::size_t letters = 2 * static_cast<std::size_t>(n) * n;
  std::size_t total = 0;
  for (std::size_t d = 0, p = 1; d <= max_degree && total <= full_limit; ++d, p *= letters)
    total += p;
  r.full_index_set = total <= full_limit;

  auto check = [&](const Word& w) {
    const Scalar a(lhs->value(w));
    const Scalar b = rhs(w);
    Scalar d = a - b;
    if (d.is_exact() ? sgn(d.exact()) < 0 : d.to_double() < 0) d = -d;
    const bool worse = d.is_exact() && r.max_discrepancy.is_exact()
                           ? d.exact() > r.max_discrepancy.exact()
                           : d.to_double() > r.max_discrepancy.to_double();
    if (worse) {
      r.max_discrepancy = d;
      r.worst_word = w.to_string();
    }
    ++r.words_checked;
  };

  if (r.full_index_set) {
    std::vector<Letter> alphabet;
    for (std::uint32_t i = 1; i <= n; ++i)
      for (std::uint32_t j = 1; j <= n; ++j)
        for (bool s : {false, true}) alphabet.push_back(make_letter(g, 0, i, j, s));
    std::vector<Word> layer{Word{}};
    for (std::size_t d = 0; d <= max_degree; ++d) {
      for (const auto& w : layer) check(w);
      if (d == max_degree) break;
      std::vector<Word> next;
      next.reserve(layer.size() * alphabet.size());
      for (const auto& w : layer)
        for (const auto& l : alphabet) next.push_back(w * Word({l}));
      layer = std::move(next);
    }
  } else {
    std::mt19937_64 rng(stream_seed(seed, n));
    for (std::size_t i = 0; i < sample; ++i) check(random_unitary_word(n, max_degree, g, rng));
  }
  r.passed = r.max_discrepancy.to_double() <= 1e-12;
  return r;
}

namespace {

struct Common {
  std::string out;
  std::uint64_t cap_entries = 0;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Output file (written atomically); stdout when omitted");
  cmd->add_option("--cap-entries", c.cap_entries, "Override the transfer-matrix entry cap");
  cmd->add_option("--seed", c.seed, "Seed for sampled constructions")->capture_default_str();
}

void apply_caps(const Common& c) {
  if (c.cap_entries == 0) return;
  Caps k = caps();
  k.max_transfer_entries = c.cap_entries;
  set_caps(k);
}

Json config_base(const std::string& command, const Common& c) {
  return Json{{"command", command},
              {"seed", c.seed},
              {"out", c.out},
              {"caps", caps_json()},
              {"kernels", kernels::isa_name(kernels::active_isa())}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Haar states, convolution dynamics and factorization nets"};
  app.require_subcommand(1);

  Common common;
  std::string group_text, word_text, pair = "classical+fixlast", pattern_text, net_text,
                                     trace_text, words_path, sizes_text = "100,400,1600";
  std::size_t degree = 4, max_iter = 500, k_max = 8, sample = 500;
  double tol = 1e-6, trace_tol = 0.05;

  auto* haar = app.add_subcommand("haar", "Exact Haar value of a word");
  haar->add_option("--group", group_text, "Group, e.g. o+:4, u+:2, s:4, t, free(t,o+:2)")->required();
  haar->add_option("--word", word_text, "Word, e.g. \"1,1;1,2*\"")->required();
  add_common(haar, common);

  auto* conv = app.add_subcommand("converge", "Iterate (T1 T2)^k towards the Haar transfer matrix");
  conv->add_option("--group", group_text)->required();
  conv->add_option("--pair", pair, "classical+fixlast | fixlast2 | perm+blocksplit | haar")
      ->capture_default_str();
  conv->add_option("--degree", degree)->capture_default_str();
  conv->add_option("--pattern", pattern_text, "Star pattern of 0/1, length = degree");
  conv->add_option("--tol", tol)->capture_default_str();
  conv->add_option("--max-iter", max_iter)->capture_default_str();
  add_common(conv, common);

  auto* def = app.add_subcommand("defect", "Factorization-net report: trace errors and defects");
  def->add_option("--net", net_text, "Net element spec, e.g. \"sample:o:4@abelianize:4\"")->required();
  def->add_option("--trace", trace_text, "Target trace spec, e.g. \"haar:s:4@perm:4\"")->required();
  def->add_option("--words", words_path, "Words file")->required();
  def->add_option("--sizes", sizes_text, "Comma-separated net sizes")->capture_default_str();
  def->add_option("--tol", trace_tol, "Final trace-error threshold")->capture_default_str();
  add_common(def, common);

  auto* us = app.add_subcommand("usplit-check", "Compare h_{U_n^+} with the T * O_n^+ factorization");
  us->add_option("--group", group_text, "u+:<n>")->required();
  us->add_option("--degree", degree, "Maximum word degree")->capture_default_str();
  us->add_option("--sample", sample, "Sample size when the full index set is too large")
      ->capture_default_str();
  add_common(us, common);

  auto* mom = app.add_subcommand("moments", "CSV of fundamental character moments");
  mom->add_option("--group", group_text)->required();
  mom->add_option("--k-max", k_max)->capture_default_str();
  add_common(mom, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const Caps saved = caps();
  struct Restore {
    const Caps& c;
    ~Restore() { set_caps(c); }
  } restore{saved};

  try {
    apply_caps(common);
    if (haar->parsed()) {
      const GroupSpec g = parse_group(group_text);
      const Word w = parse_word(word_text, g);
      const Scalar v = haar_state(g)(w);
      if (!common.out.empty()) {
        Json cfg = config_base("haar", common);
        cfg["group"] = g.name();
        cfg["word"] = w.to_string();
        emit(common.out, dump(Json{{"schema", 1}, {"config", cfg}, {"value", number(v)}}), out);
      }
      out << v.to_string() << "\n" << v.to_decimal() << "\n";
      return 0;
    }
    if (conv->parsed()) {
      const GroupSpec g = parse_group(group_text);
      ConvergenceOptions opt;
      opt.degree = degree;
      opt.pattern = parse_pattern(pattern_text, degree);
      opt.tolerance = tol;
      opt.max_iter = max_iter;
      const ConvergencePair p = convergence_pair(pair, g);
      const ConvergenceReport r = converge_to_haar(p.tau1, p.tau2, p.haar, opt);
      Json cfg = config_base("converge", common);
      cfg["group"] = g.name();
      cfg["pair"] = p.name;
      cfg["tau1"] = p.tau1.label();
      cfg["tau2"] = p.tau2.label();
      cfg["degree"] = degree;
      cfg["pattern"] = pattern_string(opt.pattern);
      cfg["tol"] = decimal(tol);
      cfg["max_iter"] = max_iter;
      Json res = Json::array();
      for (double x : r.residuals) res.push_back(decimal(x));
      Json rep{{"iterations", r.iterations},
               {"converged", r.converged},
               {"final_residual", number(r.residuals.back())},
               {"first_step_exact", r.first_step_exact},
               {"float_error_bound", number(r.float_error_bound)},
               {"monotone_tail", r.monotone_tail},
               {"subleading_modulus",
                r.subleading_modulus ? number(*r.subleading_modulus) : Json(nullptr)},
               {"residuals", res}};
      emit(common.out, dump(Json{{"schema", 1}, {"config", cfg}, {"report", rep}}), out);
      if (!common.out.empty())
        out << (r.converged ? "converged" : "not converged") << " after " << r.iterations
            << " iterations, residual " << decimal(r.residuals.back()) << "\n";
      return r.converged ? 0 : 1;
    }
    if (def->parsed()) {
      const StateOracle target = memoize(parse_trace_spec(trace_text));
      const auto words = read_words_file(words_path, target.group());
      if (words.empty()) throw ArgumentError("words file has no words");
      std::vector<WordSum> sums(words.begin(), words.end());
      std::vector<std::size_t> sizes;
      for (const auto& s : split(sizes_text, ",")) sizes.push_back(parse_uint(s, "size"));
      std::vector<UcpMap> net;
      for (std::size_t k : sizes) net.push_back(parse_net_element(net_text, k, common.seed));
      const auto fr = factorization_report(net, target, sums, trace_tol);
      Json elements = Json::array();
      for (std::size_t e = 0; e < net.size(); ++e) {
        const auto gram = defect_gram(net[e], sums);
        Json ws = Json::array();
        for (std::size_t i = 0; i < words.size(); ++i) {
          const Complex t = net[e].trace(sums[i]);
          ws.push_back(Json{{"word", words[i].to_string()},
                            {"defect", number(gram.gram(i, i).real())},
                            {"trace", {{"re", decimal(t.real())}, {"im", decimal(t.imag())}}},
                            {"target", number(target(words[i]))}});
        }
        elements.push_back(Json{{"size", sizes[e]},
                                {"dim", net[e].dim()},
                                {"trace_error", number(fr.trace_errors[e])},
                                {"max_defect", number(fr.defects[e])},
                                {"gram_min_eigenvalue", number(gram.min_eigenvalue)},
                                {"cauchy_schwarz_ok", gram.cauchy_schwarz_ok},
                                {"words", ws}});
      }
      Json cfg = config_base("defect", common);
      cfg["net"] = net_text;
      cfg["trace"] = trace_text;
      cfg["words"] = words_path;
      cfg["sizes"] = sizes;
      cfg["trace_threshold"] = decimal(trace_tol);
      cfg["defect_threshold"] = decimal(1e-10);
      Json summary{{"trace_errors_decreasing", fr.trace_errors_decreasing},
                   {"defects_decreasing", fr.defects_decreasing},
                   {"witnesses", fr.witnesses}};
      emit(common.out,
           dump(Json{{"schema", 1}, {"config", cfg}, {"summary", summary}, {"net", elements}}),
           out);
      return fr.witnesses ? 0 : 1;
    }
    if (us->parsed()) {
      const GroupSpec g =
          require_family(parse_group(group_text), Family::UPlus, "usplit-check needs u+:<n>");
      const UsplitReport r = usplit_check(g.n(), degree, sample, common.seed);
      Json cfg = config_base("usplit-check", common);
      cfg["group"] = g.name();
      cfg["degree"] = degree;
      cfg["sample"] = sample;
      Json rep{{"full_index_set", r.full_index_set},
               {"words_checked", r.words_checked},
               {"max_discrepancy", number(r.max_discrepancy)},
               {"worst_word", r.worst_word},
               {"passed", r.passed}};
      emit(common.out, dump(Json{{"schema", 1}, {"config", cfg}, {"report", rep}}), out);
      return r.passed ? 0 : 1;
    }
    if (mom->parsed()) {
      const GroupSpec g = parse_group(group_text);
      std::ostringstream csv;
      csv << "k,value\n";
      for (std::size_t k = 0; k <= k_max; ++k) csv << k << "," << char_moment(g, k).get_str() << "\n";
      emit(common.out, csv.str(), out);
      return 0;
    }
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace cqg::cli
