// Command-line front end: digit expansion of rationals, representation
// conversion, transducer evaluation, compact-set approximation and Michael
// union, all with exact rational I/O.  Machine-readable results go to
// stdout, summaries to stderr.  Exit codes: 0 success, 2 input error,
// 3 productivity/fuel error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "digitspace/coding.hpp"
#include "digitspace/hyper.hpp"
#include "digitspace/ids.hpp"
#include "digitspace/treeio.hpp"

namespace ds = digitspace;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ds::parse_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  std::string text = os.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw ds::parse_error("'" + path + "' is empty");
  return text;
}

std::vector<ds::Rat> parse_point(const std::string& text) {
  std::vector<ds::Rat> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(ds::parse_rat(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(ds::parse_rat(cur));
  return out;
}

// Box list syntax: per box, one [lo,hi] per dimension joined by 'x'; boxes
// separated by whitespace.
std::vector<ds::Box> parse_boxes(const std::string& text) {
  std::vector<ds::Box> out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    ds::Box b;
    std::size_t pos = 0;
    while (pos < tok.size()) {
      if (tok[pos] == 'x') ++pos;
      if (pos >= tok.size() || tok[pos] != '[')
        throw ds::parse_error("bad box syntax '" + tok + "'");
      auto close = tok.find(']', pos);
      if (close == std::string::npos) throw ds::parse_error("bad box syntax '" + tok + "'");
      std::string body = tok.substr(pos + 1, close - pos - 1);
      auto comma = body.find(',');
      if (comma == std::string::npos) throw ds::parse_error("box needs [lo,hi]");
      b.push_back(ds::Interval(ds::parse_rat(body.substr(0, comma)),
                               ds::parse_rat(body.substr(comma + 1))));
      pos = close + 1;
    }
    if (b.empty()) throw ds::parse_error("empty box in '" + tok + "'");
    out.push_back(std::move(b));
  }
  if (out.empty()) throw ds::parse_error("no boxes given");
  return out;
}

std::string show_box(const ds::Box& b) {
  std::ostringstream os;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) os << 'x';
    os << '[' << b[i].lo << ',' << b[i].hi << ']';
  }
  return os.str();
}

int cmd_expand(const ds::DigitSpace& space, const std::string& value, unsigned digits) {
  for (const auto& d : space.digits())
    if (d.arity != 1)
      throw ds::unsupported_error("expand needs a unary space (tree would branch)");
  std::vector<ds::Rat> x = parse_point(value);
  if (!ds::box_contains_point(space.full_box(), x))
    throw ds::domain_error("value " + value + " is outside the space");
  ds::LazyTreePtr t = ds::cauchy_to_tree(space, ds::exact_point_oracle(x));
  std::ostringstream line;
  const ds::LazyTree* cur = t.get();
  for (unsigned i = 0; i < digits; ++i) {
    if (i) line << ' ';
    line << cur->root();
    cur = cur->subtrees().front().get();
  }
  ds::Rat residual = space.bound();
  for (unsigned i = 0; i < digits; ++i) residual *= space.factor();
  std::cout << line.str() << "\n";
  std::cout << "residual " << residual << "\n";
  std::cerr << digits << "-digit expansion of " << value << "; tail within " << residual
            << " of the value\n";
  return 0;
}

int cmd_convert(const ds::DigitSpace& space, const std::string& tree_file, unsigned precision,
                bool from_cauchy, const std::string& value, unsigned depth) {
  if (from_cauchy) {
    std::vector<ds::Rat> x = parse_point(value);
    if (!ds::box_contains_point(space.full_box(), x))
      throw ds::domain_error("value " + value + " is outside the space");
    ds::LazyTreePtr t = ds::cauchy_to_tree(space, ds::exact_point_oracle(x));
    std::cout << ds::show_fin_tree(ds::prefix(t, depth)) << "\n";
    return 0;
  }
  ds::LazyTreePtr t = ds::parse_lazy_tree(slurp(tree_file));
  ds::CauchyOracle o = ds::tree_to_cauchy(space, t);
  std::vector<ds::Dyadic> u = o.query(precision);
  for (std::size_t i = 0; i < u.size(); ++i) std::cout << (i ? " " : "") << u[i];
  std::cout << "\n";
  std::cerr << "dyadic approximation within 2^-" << precision << " of the coded point\n";
  return 0;
}

int cmd_eval(const ds::DigitSpace& space, const std::string& fun_file,
             const std::vector<std::string>& arg_files, unsigned depth) {
  ds::FunPtr f = ds::parse_fun_tree(slurp(fun_file), space);
  std::vector<ds::LazyTreePtr> args;
  args.reserve(arg_files.size());
  for (const auto& p : arg_files) args.push_back(ds::parse_lazy_tree(slurp(p)));
  ds::LazyTreePtr out = ds::apply(f, std::move(args));
  std::cout << ds::show_fin_tree(ds::prefix(out, depth)) << "\n";
  return 0;
}

int cmd_hyper(const ds::DigitSpace& space, const std::string& tree_file, unsigned depth,
              const std::string& hausdorff_ref) {
  ds::HyperSpace h = ds::hyper_space(space);
  ds::LazyTreePtr t = ds::parse_lazy_tree(slurp(tree_file));
  ds::CompactApprox approx = ds::compact_enclosure(h, t, depth);
  for (const auto& b : approx.boxes) std::cout << show_box(b) << "\n";
  if (!hausdorff_ref.empty()) {
    ds::CompactApprox ref = ds::make_compact_approx(parse_boxes(hausdorff_ref), 0);
    std::cout << "distance " << ds::hausdorff_distance(approx, ref) << "\n";
  }
  std::cerr << approx.boxes.size() << " boxes at depth " << depth << "\n";
  return 0;
}

// Brute-force union of a compact-set-of-singletons code: every derived
// chain of lifted digits, stripped to a base word, contributes its
// enclosure.
void flatten_words(const ds::HyperSpace& h, const ds::LazyTree& t, unsigned n,
                   std::vector<ds::DigitId>& word, std::vector<ds::Box>& out) {
  auto parts = ds::split_hyper_id(t.root());
  if (!parts) throw ds::form_error("label '" + t.root() + "' is not a hyper digit");
  for (std::size_t k = 0; k < parts->size(); ++k) {
    auto inner = ds::split_lifted_id((*parts)[k]);
    if (!inner) throw ds::form_error("component '" + (*parts)[k] + "' is not lifted");
    word.push_back(*inner);
    if (n == 0) {
      ds::Box box = h.base().full_box();
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        box = h.base().digit(*it).action.apply(box);
      out.push_back(std::move(box));
    } else {
      const auto& kids = t.subtrees();
      if (kids.size() != parts->size())
        throw ds::arity_error("hyper node has wrong child count");
      flatten_words(h, *kids[k], n - 1, word, out);
    }
    word.pop_back();
  }
}

// Component words of a tree over the hyper alphabet of tuple-of-lifted
// digits: for each derived chain, the sigma-th components stripped to base
// digits, folded into a box.
void component_words(const ds::HyperSpace& h, const ds::LazyTree& t, std::size_t width,
                     std::size_t sigma, unsigned n, std::vector<ds::DigitId>& word,
                     std::vector<ds::Box>& out) {
  auto parts = ds::split_hyper_id(t.root());
  if (!parts) throw ds::form_error("label '" + t.root() + "' is not a hyper digit");
  for (std::size_t k = 0; k < parts->size(); ++k) {
    ds::DigitId comp = (*parts)[k];
    if (width > 1) {
      auto tuple = ds::split_tuple_id(comp);
      if (!tuple || tuple->size() != width)
        throw ds::form_error("component '" + comp + "' is not a width-" +
                             std::to_string(width) + " tuple");
      comp = (*tuple)[sigma];
    }
    auto inner = ds::split_lifted_id(comp);
    if (!inner) throw ds::form_error("component '" + comp + "' is not lifted");
    word.push_back(*inner);
    if (n == 0) {
      ds::Box box = h.base().full_box();
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        box = h.base().digit(*it).action.apply(box);
      out.push_back(std::move(box));
    } else {
      const auto& kids = t.subtrees();
      if (kids.size() != parts->size())
        throw ds::arity_error("hyper node has wrong child count");
      component_words(h, *kids[k], width, sigma, n - 1, word, out);
    }
    word.pop_back();
  }
}

int cmd_michael(const ds::DigitSpace& space, const std::string& tree_file, unsigned depth,
                bool rewrite) {
  ds::HyperSpace h = ds::hyper_space(space);
  ds::LazyTreePtr t = ds::parse_lazy_tree(slurp(tree_file));
  std::vector<ds::Box> brute;
  if (rewrite) {
    // One level of the general union node [[d...],...] is rewritten into
    // lifted form; deeper nodes must already be lifted.
    auto outer = ds::split_hyper_id(t->root());
    if (!outer) throw ds::form_error("root '" + t->root() + "' is not a hyper digit");
    std::vector<std::vector<ds::DigitId>> label;
    for (const auto& part : *outer) {
      auto inner = ds::split_hyper_id(part);
      if (!inner)
        throw ds::form_error("root component '" + part + "' is not a hyper digit");
      label.push_back(*inner);
    }
    const auto kids = t->subtrees();
    // Brute-force union of the original node: each component digit applied
    // to the matching projection words of its child.
    std::vector<ds::DigitId> word;
    for (std::size_t kappa = 0; kappa < label.size(); ++kappa) {
      for (std::size_t sigma = 0; sigma < label[kappa].size(); ++sigma) {
        const ds::Digit& d = h.base().digit(label[kappa][sigma]);
        if (depth == 0) {
          brute.push_back(d.action.apply(h.base().full_box()));
          continue;
        }
        std::vector<ds::Box> boxes;
        component_words(h, *kids[kappa], label[kappa].size(), sigma, depth - 1, word, boxes);
        for (auto& b : boxes) brute.push_back(d.action.apply(b));
      }
    }
    auto [lifted, ms] = ds::michael_rewrite(h, label, kids);
    t = ds::make_tree(ds::make_hyper_id(lifted), std::move(ms));
  } else {
    std::vector<ds::DigitId> word;
    flatten_words(h, *t, depth, word, brute);
  }
  ds::LazyTreePtr flat = ds::michael_flatten(t);
  std::cout << ds::show_fin_tree(ds::prefix(flat, depth)) << "\n";
  if (!brute.empty()) {
    ds::CompactApprox approx = ds::compact_enclosure(h, flat, depth);
    ds::CompactApprox ref = ds::make_compact_approx(std::move(brute), depth);
    std::cout << "distance " << ds::hausdorff_distance(approx, ref) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computation on digit spaces"};
  app.require_subcommand(1);

  std::string space_name = "sd", value, tree_file, fun_file, hausdorff_ref;
  std::vector<std::string> arg_files;
  unsigned digits = 8, precision = 8, depth = 8;
  bool from_cauchy = false, rewrite = false;

  auto* expand = app.add_subcommand("expand", "digit expansion of a rational");
  expand->add_option("--space", space_name, "'sd' or a space file");
  expand->add_option("--value", value, "rational p/q (comma list per dimension)")->required();
  expand->add_option("--digits", digits, "number of digits to print");

  auto* convert = app.add_subcommand("convert", "tree <-> Cauchy conversion");
  convert->add_option("--space", space_name, "'sd' or a space file");
  convert->add_option("--tree", tree_file, "tree file (s-expression, letrec allowed)");
  convert->add_option("--precision", precision, "answer within 2^-n");
  convert->add_flag("--from-cauchy", from_cauchy, "convert a rational to a tree prefix");
  convert->add_option("--value", value, "rational input for --from-cauchy");
  convert->add_option("--depth", depth, "prefix depth for --from-cauchy");

  auto* eval = app.add_subcommand("eval", "run a transducer on coded points");
  eval->add_option("--space", space_name, "'sd' or a space file");
  eval->add_option("--fun", fun_file, "transducer file")->required();
  eval->add_option("--args", arg_files, "input tree files")->required();
  eval->add_option("--depth", depth, "output prefix depth");

  auto* hyper = app.add_subcommand("hyper", "approximate a compact set code");
  hyper->add_option("--space", space_name, "'sd' or a space file");
  hyper->add_option("--tree", tree_file, "hyper tree file")->required();
  hyper->add_option("--depth", depth, "approximation depth");
  hyper->add_option("--hausdorff", hausdorff_ref, "reference box list to compare against");

  auto* michael = app.add_subcommand("michael", "flatten a compact set of compact sets");
  michael->add_option("--space", space_name, "'sd' or a space file");
  michael->add_option("--tree", tree_file, "lifted hyper tree file")->required();
  michael->add_option("--depth", depth, "output prefix depth");
  michael->add_flag("--rewrite", rewrite, "rewrite a general union node into lifted form");

  CLI11_PARSE(app, argc, argv);

  try {
    ds::DigitSpace space = ds::load_space(space_name);
    if (expand->parsed()) return cmd_expand(space, value, digits);
    if (convert->parsed()) {
      if (!from_cauchy && tree_file.empty())
        throw ds::parse_error("convert needs --tree or --from-cauchy with --value");
      if (from_cauchy && value.empty()) throw ds::parse_error("--from-cauchy needs --value");
      return cmd_convert(space, tree_file, precision, from_cauchy, value, depth);
    }
    if (eval->parsed()) return cmd_eval(space, fun_file, arg_files, depth);
    if (hyper->parsed()) return cmd_hyper(space, tree_file, depth, hausdorff_ref);
    if (michael->parsed()) return cmd_michael(space, tree_file, depth, rewrite);
  } catch (const ds::productivity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ds::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
