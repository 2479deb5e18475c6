// gamma-cone: curvature, conical curvature and audits over graph corpora.
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 input or usage error.

#include <gamma_cone/gamma_cone.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace gc = gamma_cone;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_input_error = 2;

std::string read_all(std::istream &in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<gc::NamedGraph> parse_graph6_lines(const std::string &text,
                                               const std::string &id) {
  std::vector<gc::NamedGraph> out;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> kept;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    try {
      kept.push_back(line);
      out.push_back({id, gc::parse_graph6(line)});
    } catch (const gc::parse_error &e) {
      throw gc::input_error(id + ": line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (out.empty())
    throw gc::input_error(id + ": no graphs in input");
  if (out.size() > 1)
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i].id = id + "#" + std::to_string(i) + ":" + kept[i];
  return out;
}

/// Graphs from a .el/.g6 path, or "-" for standard input (format sniffed:
/// an edge list starts with "n" or a comment).
std::vector<gc::NamedGraph> load_input(const std::string &path) {
  std::string text;
  bool edge_list = false;
  if (path == "-") {
    text = read_all(std::cin);
    const auto first = text.find_first_not_of(" \t\r\n");
    edge_list = first != std::string::npos && (text[first] == 'n' || text[first] == '#');
  } else {
    const auto ext = std::filesystem::path(path).extension().string();
    if (ext == ".el")
      edge_list = true;
    else if (ext != ".g6")
      throw gc::input_error(path + ": unknown input format (expected .el or .g6)");
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw gc::input_error(path + ": cannot open file");
    text = read_all(in);
  }
  if (edge_list) {
    try {
      return {{path, gc::parse_edge_list(text)}};
    } catch (const gc::parse_error &e) {
      throw gc::input_error(path + ": " + e.what());
    }
  }
  return parse_graph6_lines(text, path);
}

gc::Graph family_graph(const std::string &family, std::size_t n) {
  if (family == "complete")
    return gc::make_complete(n);
  if (family == "cycle")
    return gc::make_cycle(n);
  if (family == "path")
    return gc::make_path(n);
  if (family == "hypercube")
    return gc::make_hypercube(n);
  throw gc::input_error("unknown family '" + family + "'");
}

constexpr std::size_t hypercube_audit_cap = 6;
constexpr std::size_t all_connected_audit_cap = 8;

std::vector<gc::NamedGraph> family_corpus(const std::string &family, std::size_t max_n) {
  std::vector<gc::NamedGraph> out;
  if (family == "all-connected") {
    if (max_n > all_connected_audit_cap)
      throw gc::input_error("all-connected audits require --max-n <= 8");
    for (auto &g : gc::connected_graphs_up_to(max_n, 2)) {
      auto id = "all-connected:" + gc::encode_graph6(g);
      out.push_back({std::move(id), std::move(g)});
    }
  } else {
    std::size_t lo = 2;
    if (family == "cycle")
      lo = 3;
    else if (family == "hypercube") {
      lo = 1;
      if (max_n > hypercube_audit_cap)
        throw gc::input_error("hypercube audits require --max-n <= 6 (dimension)");
    } else if (family != "complete" && family != "path")
      throw gc::input_error("unknown family '" + family + "'");
    for (std::size_t n = lo; n <= max_n; ++n)
      out.push_back({family + ":" + std::to_string(n), family_graph(family, n)});
  }
  if (out.empty())
    throw gc::input_error("--max-n " + std::to_string(max_n) + " leaves the " + family +
                          " corpus empty");
  return out;
}

int emit(const std::vector<gc::AuditReport> &reports) {
  bool failed = false;
  std::string buffer;
  for (const auto &r : reports) {
    buffer += r.to_line();
    buffer += '\n';
    failed = failed || r.any_failed();
  }
  std::cout << buffer << std::flush;
  return failed ? exit_check_failed : exit_ok;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Bakry-Émery and conical curvature toolkit for finite graphs"};
  app.set_version_flag("--version", std::string(gc::toolkit_version));
  app.require_subcommand(1);

  std::string input;
  std::string at = "all";
  std::string n_text = "inf";
  auto *curv = app.add_subcommand("curvature", "pointwise Ric_N with witnesses");
  curv->add_option("input", input, ".el/.g6 file or - for stdin")->required();
  curv->add_option("--at", at, "vertex id or 'all'")->capture_default_str();
  curv->add_option("--n", n_text, "dimension N > 1 or inf")->capture_default_str();

  auto *cric_cmd = app.add_subcommand("cric", "conical curvature CRic_N and K^c_max");
  cric_cmd->add_option("input", input, ".el/.g6 file or - for stdin")->required();
  cric_cmd->add_option("--n", n_text, "dimension N > 1 or inf")->capture_default_str();

  std::string family;
  std::size_t max_n = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> audit_ns;
  auto *audit = app.add_subcommand("audit", "run every check over a graph corpus");
  auto *audit_input = audit->add_option("input", input, ".el/.g6 file or - for stdin");
  auto *audit_family =
      audit->add_option("--family", family, "complete|cycle|path|hypercube|all-connected");
  audit->add_option("--max-n", max_n, "largest vertex count (hypercube: dimension)");
  audit->add_option("--seed", seed, "seed for random functions and apex sets")
      ->capture_default_str();
  audit->add_option("--n", audit_ns, "dimension N, repeatable (default 2 5 inf)");
  audit_input->excludes(audit_family);

  std::size_t gen_n = 0;
  std::string format = "el";
  auto *gen = app.add_subcommand("generate", "emit a family member");
  gen->add_option("--family", family, "complete|cycle|path|hypercube|all-connected")
      ->required();
  gen->add_option("--n", gen_n, "vertex count (hypercube: dimension)")->required();
  gen->add_option("--format", format, "el|g6")
      ->check(CLI::IsMember({"el", "g6"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input_error;
  }

  try {
    if (*curv) {
      const auto np = gc::DimensionParam::parse(n_text);
      std::optional<gc::Vertex> vertex;
      if (at != "all") {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
          v = std::stoull(at, &used);
        } catch (const std::exception &) {
          used = 0;
        }
        if (used == 0 || used != at.size())
          throw gc::input_error("--at expects a vertex id or 'all', got '" + at + "'");
        vertex = static_cast<gc::Vertex>(v);
      }
      std::vector<gc::AuditReport> reports;
      for (const auto &g : load_input(input))
        reports.push_back(gc::curvature_report(g, vertex, np));
      return emit(reports);
    }
    if (*cric_cmd) {
      const auto np = gc::DimensionParam::parse(n_text);
      std::vector<gc::AuditReport> reports;
      for (const auto &g : load_input(input))
        reports.push_back(gc::cric_report(g, np));
      return emit(reports);
    }
    if (*audit) {
      gc::AuditOptions opt;
      opt.seed = seed;
      if (!audit_ns.empty()) {
        opt.n_params.clear();
        for (const auto &t : audit_ns)
          opt.n_params.push_back(gc::DimensionParam::parse(t));
      }
      std::vector<gc::NamedGraph> corpus;
      if (!family.empty()) {
        if (max_n == 0)
          throw gc::input_error("--family needs --max-n");
        corpus = family_corpus(family, max_n);
      } else if (!input.empty()) {
        corpus = load_input(input);
      } else {
        throw gc::input_error("audit needs an input file or --family");
      }
      for (const auto &g : corpus)
        gc::require_connected(g.graph, g.id);
      return emit(gc::run_audit(corpus, opt));
    }
    if (*gen) {
      std::vector<gc::Graph> graphs;
      if (family == "all-connected") {
        if (format != "g6")
          throw gc::input_error("all-connected emits several graphs; use --format g6");
        graphs = gc::connected_graphs(gen_n);
      } else {
        graphs.push_back(family_graph(family, gen_n));
      }
      std::string out;
      for (const auto &g : graphs) {
        if (format == "g6") {
          out += gc::encode_graph6(g);
          out += '\n';
        } else {
          out += gc::encode_edge_list(g);
        }
      }
      std::cout << out << std::flush;
      return exit_ok;
    }
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  return exit_input_error;
}
