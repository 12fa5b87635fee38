#include <turb/turb.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace {

using turb::Json;

struct Options {
  std::string input;
  int cap = 2;
  std::size_t samples = 64;
  std::uint64_t seed = 1;
  std::string format = "json";
  bool oracle = false;
  std::string out;
  std::string flow;
  unsigned threads = 0;
  bool timings = false;
  std::string from = "auto";
  std::string to = "chart";
};

// Exit 1 from inside a command while still emitting the report.
struct Verdict {
  bool ok = true;
  void require(bool cond) { ok = ok && cond; }
};

void text_lines(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) text_lines(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) text_lines(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

std::string render_report(const Json& report, const std::string& format) {
  if (format == "text") {
    std::ostringstream os;
    text_lines(report, "", os);
    return os.str();
  }
  return report.dump(2) + "\n";
}

std::vector<turb::Bundle> cells_for(const turb::Chart& c, int cap) {
  if (!turb::find_band(c)) return turb::enumerate_maximal_cliques(c);
  std::vector<turb::Bundle> out;
  for (auto& b : turb::enumerate_maximal_bundles_capped(c, cap))
    if (!b.routes.empty()) out.push_back(b);
  return out;
}

Json presentation_summary(const turb::Chart& c, const turb::Presentation& p) {
  Json j = turb::to_json(c, p);
  j["vertex_count"] = p.vertices.size();
  j["ray_count"] = p.rays.size();
  return j;
}

std::string detect_kind(const Json& j) {
  if (j.contains("rotation")) return "rotation";
  if (j.contains("arrows")) return "algebra";
  if (j.contains("n_plus_1")) return "signed";
  if (j.contains("classes")) return "chart";
  if (j.contains("in_order") || j.contains("out_order")) return "digraph";
  turb::fail(turb::ErrorCode::SchemaError, "$: cannot tell the input kind; pass --from");
}

Json run(const std::string& cmd, const Options& o, const std::string& bytes, Verdict& verdict) {
  Json doc = turb::parse_json_text(bytes);
  Json results;

  if (cmd == "convert") {
    std::string from = o.from == "auto" ? detect_kind(doc) : o.from;
    std::optional<turb::Chart> chart;
    if (from == "chart") {
      chart = turb::chart_from_json(doc);
    } else if (from == "digraph") {
      chart = turb::chart_of_framed_digraph(turb::digraph_from_json(doc));
    } else if (from == "algebra") {
      chart = turb::chart_of_fringed_algebra(turb::algebra_from_json(doc));
    } else if (from == "signed") {
      chart = turb::chart_of_signed_graph(turb::signed_graph_from_json(doc));
    } else if (from == "rotation") {
      auto rf = turb::rotation_from_json(doc);
      auto base = std::filesystem::path(o.input).parent_path() / rf.chart_path;
      chart = turb::clockwise_framing(turb::raw_chart_from_json(turb::parse_json_text(turb::read_file(base.string()))), rf.rotation);
    } else {
      turb::fail(turb::ErrorCode::SchemaError, "unknown --from kind '" + from + "'");
    }
    results["from"] = from;
    results["to"] = o.to;
    if (o.to == "chart") {
      results["output"] = turb::to_json(*chart);
    } else if (o.to == "algebra") {
      auto alg = turb::fringed_algebra_of_gentle_chart(*chart);
      results["output"] = turb::to_json(alg);
      if (o.oracle) {
        bool iso = turb::charts_isomorphic(turb::chart_of_fringed_algebra(alg), *chart).has_value();
        results["round_trip_isomorphic"] = iso;
        verdict.require(iso);
      }
    } else if (o.to == "signed") {
      auto [sg, cert] = turb::signed_graph_of_acyclic_chart(*chart);
      results["output"] = turb::to_json(sg);
      results["certificate"] = turb::to_json(cert);
      if (o.oracle) {
        bool eq = turb::oracle_presentation(turb::chart_of_signed_graph(sg)) == turb::oracle_presentation(*chart);
        results["flow_polytopes_equal"] = eq;
        verdict.require(eq);
      }
    } else {
      turb::fail(turb::ErrorCode::SchemaError, "unknown --to kind '" + o.to + "'");
    }
    return results;
  }

  turb::Chart c = turb::chart_from_json(doc);
  results["chart"] = c.name();

  if (cmd == "validate") {
    std::size_t internal = 0;
    for (turb::VertexIndex v = 0; v < c.vertex_count(); ++v) internal += c.is_internal(v) ? 1 : 0;
    results["valid"] = true;
    results["internal_vertices"] = internal;
    results["fringe_vertices"] = c.vertex_count() - internal;
    results["edges"] = c.edge_count();
    results["canonical"] = turb::to_json(c);
  } else if (cmd == "classify") {
    results["classification"] = turb::to_json(c, turb::classify_chart(c));
    results["ampleness"] = turb::to_json(c, turb::ampleness_report(c, o.cap));
  } else if (cmd == "present") {
    auto tp = turb::trail_presentation(c);
    auto el = turb::enumerate_elementary_trails(c);
    results["presentation"] = presentation_summary(c, tp);
    results["elementary_routes"] = Json::array();
    for (auto& t : el.routes) results["elementary_routes"].push_back(turb::to_json(c, t));
    results["elementary_bands"] = Json::array();
    for (auto& t : el.bands) results["elementary_bands"].push_back(turb::to_json(c, t));
    if (o.oracle) {
      auto op = turb::oracle_presentation(c);
      results["oracle"] = presentation_summary(c, op);
      results["oracle_agrees"] = tp == op;
      verdict.require(tp == op);
    }
  } else if (cmd == "triangulate") {
    try {
      auto rep = turb::verify_triangulation(c);
      results["triangulation"] = turb::to_json(rep);
      Json cells = Json::array();
      for (auto& b : turb::enumerate_maximal_cliques(c)) cells.push_back(turb::to_json(c, b));
      results["cliques"] = cells;
      verdict.require(rep.ok);
    } catch (const turb::Error& e) {
      if (e.code() != turb::ErrorCode::NotAcyclic) throw;
      results["error"] = {{"code", turb::error_name(e.code())}, {"message", e.what()}};
      verdict.require(false);
    }
  } else if (cmd == "subdivide") {
    auto rep = turb::verify_subdivision_capped(c, o.cap, o.samples, o.seed);
    results["subdivision"] = turb::to_json(c, rep);
    Json cells = Json::array();
    for (auto& b : cells_for(c, o.cap)) cells.push_back(turb::to_json(c, b));
    results["bundles"] = cells;
    verdict.require(rep.ok);
  } else if (cmd == "decompose") {
    if (o.flow.empty()) turb::fail(turb::ErrorCode::SchemaError, "decompose needs --flow");
    auto f = turb::parse_flow(c, o.flow);
    results["flow"] = turb::flow_json(c, f);
    try {
      results["combination"] = turb::to_json(c, turb::decompose_flow(c, f, o.cap));
    } catch (const turb::Error& e) {
      if (e.code() != turb::ErrorCode::NotCovered) throw;
      results["error"] = {{"code", turb::error_name(e.code())}, {"message", e.what()}};
      verdict.require(false);
    }
  } else if (cmd == "envelope") {
    auto env = turb::gentle_envelope(c);
    auto rep = turb::verify_envelope_roundtrip(c, env);
    results["envelope"] = turb::to_json(env);
    results["verification"] = turb::to_json(rep);
    verdict.require(rep.ok);
  } else if (cmd == "render") {
    auto p = turb::oracle_presentation(c);
    auto r = turb::render_projection(c, p, cells_for(c, o.cap));
    results["dimension"] = r.dimension;
    results["format"] = r.format;
    if (o.out.empty()) {
      results["drawing"] = r.text;
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) turb::fail(turb::ErrorCode::SyntaxError, "cannot write '" + o.out + "'");
      f << r.text;
      results["written"] = o.out;
    }
  }
  return results;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Framed turbulence charts: presentations, subdivisions, envelopes, conversions"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "Validate a chart file"},
      {"classify", "Structural classification and ampleness"},
      {"present", "Vertices and rays from elementary trails"},
      {"triangulate", "Verify the clique triangulation of an acyclic chart"},
      {"subdivide", "Verify the capped bundle subdivision"},
      {"decompose", "Bundle combination of a flow"},
      {"envelope", "Gentle envelope with round-trip verification"},
      {"convert", "Convert between charts, framed digraphs, fringed algebras, signed graphs, rotations"},
      {"render", "Project F1 and its cells to SVG (2D) or OBJ (3D)"}};
  for (auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", o.input, "input JSON file, '-' for stdin")->required();
    sub->add_option("--cap", o.cap, "trail cap for non-acyclic charts")->check(CLI::PositiveNumber);
    sub->add_option("--samples", o.samples, "random probes for subdivide");
    sub->add_option("--seed", o.seed, "seed for random probes");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--oracle", o.oracle, "cross-check against the polyhedral oracle");
    sub->add_option("--out", o.out, "write the report (or drawing, for render) to a file");
    sub->add_option("--flow", o.flow, "flow as e=1,f=2/3 or a JSON object");
    sub->add_option("--threads", o.threads, "worker threads (also TURB_THREADS)");
    sub->add_flag("--timings", o.timings, "include wall-clock timings in the report");
    sub->add_option("--from", o.from, "convert: auto|chart|digraph|algebra|signed|rotation");
    sub->add_option("--to", o.to, "convert: chart|algebra|signed");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  std::string cmd = app.get_subcommands().front()->get_name();

  unsigned threads = o.threads;
  if (threads == 0)
    if (const char* env = std::getenv("TURB_THREADS")) threads = unsigned(std::strtoul(env, nullptr, 10));
  turb::set_thread_count(threads == 0 ? 1 : threads);

  std::string bytes;
  try {
    if (o.input == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      bytes = ss.str();
    } else {
      bytes = turb::read_file(o.input);
    }
  } catch (const turb::Error& e) {
    std::cerr << turb::error_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  }

  Json report;
  report["command"] = cmd;
  report["input"] = o.input;
  report["digest"] = turb::digest(bytes);
  report["seeds"] = {{"seed", o.seed}};
  Verdict verdict;
  auto t0 = std::chrono::steady_clock::now();
  try {
    report["results"] = run(cmd, o, bytes, verdict);
  } catch (const turb::Error& e) {
    Json err = {{"code", turb::error_name(e.code())}, {"message", e.what()}};
    std::cerr << render_report(Json{{"command", cmd}, {"input", o.input}, {"error", err}}, o.format);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  if (o.timings)
    report["timings"] = {{"total_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  report["ok"] = verdict.ok;

  std::string text = render_report(report, o.format);
  if (!o.out.empty() && cmd != "render") {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write '" << o.out << "'\n";
      return 2;
    }
    f << text;
  } else {
    std::cout << text;
  }
  return verdict.ok ? 0 : 1;
}
