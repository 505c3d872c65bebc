// Command line driver: group data, zeta polynomials, constructions and check
// batteries for G_lambda over o_l = Z/p^l or F_q[t]/(t^l).

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "modrep2/verify.hpp"

using namespace modrep2;
using Json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Job {
  std::string command;
  Backend backend = Backend::padic;
  unsigned q = 2;
  Lambda lambda{2, 1};
  std::string format = "json";
  std::string out;
  std::uint64_t cap = 500000;
};

Json zeta_json(const ZetaPolynomial& z) {
  Json j = Json::object();
  for (const auto& [d, c] : z) j[std::to_string(d)] = c;
  return j;
}

Json header(const Job& job) {
  Json j;
  j["schema"] = "1";
  j["command"] = job.command;
  j["backend"] = to_string(job.backend);
  j["q"] = job.q;
  j["lambda"] = {job.lambda.l1, job.lambda.l2};
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

// One rendered result: JSON plus the CSV and pretty renderings.
struct Output {
  Json json;
  std::vector<std::vector<std::string>> csv;  // first row is the header
  std::string pretty;
  bool pass = true;
};

void add_zeta(Output& o, const ZetaPolynomial& z) {
  o.json["zeta"] = zeta_json(z);
  o.csv = {{"dimension", "count"}};
  for (const auto& [d, c] : z) o.csv.push_back({std::to_string(d), std::to_string(c)});
}

Output report_output(const Job& job, const VerifyReport& rep) {
  Output o{header(job), {{"name", "anchor", "expected", "computed", "pass"}}, {}, rep.pass()};
  Json recs = Json::array();
  std::ostringstream p;
  for (const auto& r : rep.records) {
    recs.push_back({{"name", r.name}, {"anchor", r.anchor}, {"expected", r.expected}, {"computed", r.computed}, {"pass", r.pass}});
    o.csv.push_back({r.name, r.anchor, r.expected, r.computed, r.pass ? "true" : "false"});
    p << (r.pass ? "PASS " : "FAIL ") << r.name << ": expected " << r.expected << ", computed " << r.computed << "\n";
  }
  o.json["records"] = recs;
  o.json["pass"] = rep.pass();
  p << (rep.pass() ? "overall: pass" : "overall: FAIL") << " (" << rep.records.size() << " checks)\n";
  o.pretty = p.str();
  return o;
}

Output run(const Job& job) {
  const Lambda& l = job.lambda;
  if (job.command == "verify-all") return report_output(job, verify_all(job.backend, job.q, l));
  if (job.command == "ring-compare") return report_output(job, ring_compare(job.q, l));

  auto g = make_group(job.backend, job.q, l);
  Output o{header(job), {}, {}, true};
  std::ostringstream p;
  p << "G" << l.str() << " over " << g->ring1()->describe() << "\n";
  if (job.command == "order") {
    o.json["order"] = g->order();
    o.json["formula"] = group_order_formula(l, job.q);
    o.csv = {{"order", "formula"}, {std::to_string(g->order()), std::to_string(group_order_formula(l, job.q))}};
    p << "order " << g->order() << "\n";
  } else if (job.command == "classes") {
    o.json["classes"] = g->class_count();
    if (l.l2 >= 1) o.json["formula"] = class_count_formula(l, job.q);
    o.csv = {{"classes"}, {std::to_string(g->class_count())}};
    p << "classes " << g->class_count() << "\n";
  } else if (job.command == "orbits") {
    if (l.l2 < 1) throw UsageError("orbits need a rank two lambda");
    Json orbits = Json::array();
    o.csv = {{"type", "params", "size", "representative"}};
    for (const auto& r : dual_orbits(*g)) {
      Json params = r.label.params;
      orbits.push_back({{"type", r.label.type},
                        {"label", r.label.str()},
                        {"size", r.size},
                        {"representative", {r.rep.u, r.rep.v, r.rep.w, r.rep.z}}});
      std::string ps;
      for (Code c : r.label.params) ps += (ps.empty() ? "" : ";") + std::to_string(c);
      o.csv.push_back({r.label.type, ps, std::to_string(r.size), r.rep.str()});
      p << r.label.str() << " size " << r.size << "\n";
    }
    o.json["orbits"] = orbits;
    Json table = Json::object();
    for (const auto& [t, v] : computed_orbit_table(*g)) table[t] = {{"orbits", v.first}, {"characters", v.second}};
    o.json["table"] = table;
    o.json["orbits_on_K"] = orbits_on_k(g);
    p << "classes inside K: " << orbits_on_k(g) << "\n";
  } else if (job.command == "zeta") {
    const auto z = assemble(job.backend, job.q, l)->zeta();
    add_zeta(o, z);
    p << "R = " << zeta_str(z) << "\n";
  } else if (job.command == "dixon") {
    const auto& z = dixon_degrees(g);
    add_zeta(o, z);
    o.json["prime"] = dixon_prime(exponent(*g), g->order());
    o.json["classes"] = g->class_count();
    p << "Dixon degrees " << zeta_str(z) << "\n";
  } else if (job.command == "construct") {
    const auto a = assemble(job.backend, job.q, l);
    Json fams = Json::array();
    o.csv = {{"family", "dimension", "count"}};
    for (const auto& f : a->families) {
      Json members = Json::array();
      for (std::size_t i = 0; i < f.members.size(); ++i)
        members.push_back({{"degree", f.members[i].int_degree()}, {"provenance", f.provenance[i]}});
      fams.push_back({{"label", to_string(f.label)}, {"count", f.count()}, {"count_only", f.count_only()}, {"zeta", zeta_json(f.zeta())},
                      {"members", members}});
      for (const auto& [d, c] : f.zeta()) o.csv.push_back({to_string(f.label), std::to_string(d), std::to_string(c)});
      p << to_string(f.label) << ": " << zeta_str(f.zeta()) << (f.count_only() ? " (count only)" : "") << "\n";
    }
    o.json["families"] = fams;
    o.json["zeta"] = zeta_json(a->zeta());
    p << "R = " << zeta_str(a->zeta()) << "\n";
  }
  o.pretty = p.str();
  return o;
}

std::string render(const Job& job, const Output& o) {
  if (job.format == "json") return o.json.dump(2) + "\n";
  if (job.format == "pretty") return o.pretty;
  std::string s;
  for (const auto& row : o.csv) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_field(row[i]);
    s += "\n";
  }
  return s;
}

void validate_job(const Job& job) {
  try {
    validate(job.lambda);
    make_ring({job.backend, job.q, 1});
    if (job.command == "ring-compare") {
      if (prime_power_split(job.q).second != 1) throw UsageError("ring-compare needs a prime q");
      if (job.lambda.l2 == 0 && job.lambda.l1 == 0) throw UsageError("invalid lambda");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::uint64_t order = group_order_formula(job.lambda, job.q);
  if (order > job.cap)
    throw UsageError("|G" + job.lambda.str() + "| = " + std::to_string(order) + " exceeds the size cap " + std::to_string(job.cap) +
                     " (raise it with --cap)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irreducible characters of automorphism groups of rank two modules over finite local rings"};
  Job job;
  std::string backend = "padic", lambda = "2,1";
  unsigned threads = 0;
  app.add_option("command", job.command, "What to compute")
      ->required()
      ->check(CLI::IsMember({"order", "classes", "orbits", "zeta", "construct", "dixon", "verify-all", "ring-compare"}));
  app.add_option("--backend", backend, "padic (Z/p^l) or tpoly (F_q[t]/t^l)")->check(CLI::IsMember({"padic", "tpoly"}));
  app.add_option("--p,--q", job.q, "Residue field size");
  app.add_option("--lambda", lambda, "Type l1,l2 with l1 >= l2 >= 0");
  app.add_option("--format", job.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--out", job.out, "Write the report here instead of stdout");
  app.add_option("--cap", job.cap, "Largest group order to enumerate");
  app.add_option("--threads", threads, "Worker threads (default: MODREP2_THREADS, else 1)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    job.backend = backend_from_string(backend);
    std::vector<unsigned> parts;
    std::stringstream ss(lambda);
    for (std::string tok; std::getline(ss, tok, ',');) {
      std::size_t used = 0;
      const unsigned long v = std::stoul(tok, &used);
      if (used != tok.size()) throw UsageError("bad --lambda " + lambda);
      parts.push_back(static_cast<unsigned>(v));
    }
    if (parts.empty() || parts.size() > 2) throw UsageError("--lambda takes l1 or l1,l2");
    job.lambda = {parts[0], parts.size() == 2 ? parts[1] : 0u};
    validate_job(job);
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (threads) set_worker_count(threads);

  Output out;
  try {
    out = run(job);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const std::string text = render(job, out);
  if (job.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(job.out, std::ios::binary);
    if (!f || !(f << text)) {
      std::cerr << "error: cannot write " << job.out << "\n";
      return 1;
    }
  }
  return out.pass ? 0 : 1;
}
