// surfbound command-line front end.
//
// Exit status: 0 when every check passes, 1 on a failed check or mismatch,
// 2 on malformed input.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "surfbound/surfbound.hpp"

namespace
{

using namespace surfbound;

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_input = 2;

int cmd_atlas_list()
{
  for (auto const &e : atlas_entries())
    std::cout << e.name << "\t" << (e.order ? std::to_string(e.order) : "-") << "\t" << e.description << "\n";
  return exit_ok;
}

int cmd_rh(std::string const &sig, unsigned long order)
{
  std::cout << rh_genus(Signature::parse(sig), order) << "\n";
  return exit_ok;
}

int cmd_search(std::string const &atlas, std::string const &sig, bool dedupe, std::size_t limit)
{
  auto g = atlas_build(atlas);
  SearchOptions opts;
  opts.dedupe = dedupe;
  if (limit > 0)
    opts.limit = limit;
  auto found = search_vectors(Signature::parse(sig), g, opts);
  for (auto const &v : found) {
    std::cout << "(";
    for (std::size_t k = 0; k < v.cones.size(); ++k)
      std::cout << (k ? ", " : "") << g->format(v.cones[k]);
    for (auto [a, b] : v.hyperbolic_pairs)
      std::cout << "; [" << g->format(a) << ", " << g->format(b) << "]";
    std::cout << ")\n";
  }
  std::cout << found.size() << " vector(s)" << (dedupe ? " up to braid moves and conjugation" : "") << "\n";
  return found.empty() ? exit_mismatch : exit_ok;
}

int cmd_check_bounding(std::string const &atlas, std::string const &sig_text)
{
  auto g = atlas_build(atlas);
  auto sig = Signature::parse(sig_text);
  auto v = first_vector(sig, g);
  if (!v) {
    std::cout << "no " << sig.pretty() << " vector in " << atlas << "\n";
    return exit_mismatch;
  }
  auto verdict = axis_closure_check(*v);
  auto cones = cone_data(*v);
  bool const rechecked = verdict.obstructed() ? verify_obstruction(cones, *g, verdict.obstruction())
                                              : verify_plan(cones, *g, verdict.plan());
  std::cout << to_json(*v).dump() << "\n" << to_json(verdict, *g).dump(2) << "\n";
  std::cout << (verdict.obstructed() ? "Obstruction: the action does not bound" : "NoObstruction") << "\n";
  if (!rechecked) {
    std::cout << "independent re-verification FAILED\n";
    return exit_mismatch;
  }
  return exit_ok;
}

int cmd_verify_tet(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (json::exception const &e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (j.is_object() && j.value("kind", "") == "handlebody") {
    auto k = verify_certificate_json(j);
    std::cout << (k ? "accepted: handlebody certificate" : "rejected: " + k.reason) << "\n";
    return k ? exit_ok : exit_mismatch;
  }
  auto res = verify_tet_json(j);
  if (!res) {
    std::cout << "rejected: " << res.failure << "\n";
    return exit_mismatch;
  }
  auto const &c = *res.value;
  auto gram = gram_check(c.tet);
  std::cout << "accepted: " << c.group->name() << " " << c.boundary.signature.pretty() << " genus "
            << rh_genus(c.boundary.signature, c.group->order()) << "\n  vertex groups:";
  for (auto const &t : tet_vertex_groups(c.tet))
    if (t)
      std::cout << " " << t->name();
  std::cout << "\n  gram eigenvalues:";
  for (double ev : gram.eigenvalues)
    std::cout << " " << ev;
  std::cout << "\n  gram check: " << (gram.accepted ? "passed" : "failed: " + gram.reason) << "\n";
  std::cout << to_json(c).dump(2) << "\n";
  return gram.accepted ? exit_ok : exit_mismatch;
}

int cmd_search_handlebody(std::string const &atlas, std::string const &sig_text)
{
  auto g = atlas_build(atlas);
  auto sig = Signature::parse(sig_text);
  if (no_handlebody_rule(sig)) {
    std::cout << "NoHandlebody: triangle signature\n";
    return exit_ok;
  }
  auto v = first_vector(sig, g);
  if (!v) {
    std::cout << "no " << sig.pretty() << " vector in " << atlas << "\n";
    return exit_mismatch;
  }
  auto res = search_handlebody(*v);
  if (!res) {
    std::cout << "Inconclusive: " << res.failure << "\n";
    return exit_mismatch;
  }
  std::cout << "pattern " << res.value->pattern.describe() << ", euler "
            << to_string(pattern_euler(res.value->pattern)) << "\n"
            << to_json(*res.value).dump(2) << "\n";
  return exit_ok;
}

int cmd_reproduce(unsigned genus, std::string const &json_path, unsigned threads)
{
  std::vector<VerdictRow> rows;
  if (genus == 3)
    rows = reproduce_genus3(threads);
  else if (genus == 4)
    rows = reproduce_genus4(threads);
  else
    throw InputError("--genus must be 3 or 4");
  std::cout << format_table(rows, genus);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out)
      throw InputError("cannot write " + json_path);
    out << report_json(rows, genus).dump(2) << "\n";
  }
  bool const ok = std::all_of(rows.begin(), rows.end(), [](auto const &r) { return r.ok(); });
  std::cout << (ok ? "all rows verified" : "MISMATCH") << "\n";
  return ok ? exit_ok : exit_mismatch;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Bounding checks for finite group actions on surfaces"};
  app.require_subcommand(1);

  auto *atlas = app.add_subcommand("atlas", "Atlas of named groups");
  auto *atlas_list = atlas->add_subcommand("list", "List atlas groups");
  atlas->require_subcommand(1);

  std::string sig, atlas_name, cert, json_path;
  unsigned long order = 0;
  unsigned genus = 0, threads = 1;
  std::size_t limit = 0;
  bool dedupe = false;

  auto *rh = app.add_subcommand("rh", "Surface genus from signature and group order");
  rh->add_option("--signature", sig, "signature h:m1,...,mr")->required();
  rh->add_option("--order", order, "group order")->required();

  auto *search = app.add_subcommand("search", "Enumerate generating vectors");
  search->add_option("--atlas", atlas_name)->required();
  search->add_option("--signature", sig)->required();
  search->add_flag("--dedupe", dedupe, "one vector per braid/conjugation orbit");
  search->add_option("--limit", limit, "stop after this many vectors");

  auto *check = app.add_subcommand("check-bounding", "Axis-closure check for the first vector");
  check->add_option("--atlas", atlas_name)->required();
  check->add_option("--signature", sig)->required();

  auto *vtet = app.add_subcommand("verify-tet", "Verify a tetrahedron (or handlebody) certificate");
  vtet->add_option("--cert", cert)->required();

  auto *shb = app.add_subcommand("search-handlebody", "Search handlebody patterns");
  shb->add_option("--atlas", atlas_name)->required();
  shb->add_option("--signature", sig)->required();

  auto *repro = app.add_subcommand("reproduce", "Reproduce a classification table");
  repro->add_option("--genus", genus)->required()->check(CLI::IsMember({3u, 4u}));
  repro->add_option("--json", json_path, "write the JSON report here");
  repro->add_option("--threads", threads, "rows computed in parallel")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const &e) {
    return app.exit(e);
  } catch (CLI::ParseError const &e) {
    app.exit(e);
    return exit_input;
  }

  try {
    if (atlas_list->parsed())
      return cmd_atlas_list();
    if (rh->parsed())
      return cmd_rh(sig, order);
    if (search->parsed())
      return cmd_search(atlas_name, sig, dedupe, limit);
    if (check->parsed())
      return cmd_check_bounding(atlas_name, sig);
    if (vtet->parsed())
      return cmd_verify_tet(cert);
    if (shb->parsed())
      return cmd_search_handlebody(atlas_name, sig);
    if (repro->parsed())
      return cmd_reproduce(genus, json_path, threads);
  } catch (InputError const &e) {
    std::cerr << e.what() << "\n";
    return exit_input;
  } catch (json::exception const &e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return exit_input;
  } catch (Error const &e) {
    std::cerr << e.what() << "\n";
    return exit_mismatch;
  }
  return exit_input;
}
