#include "spocs/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace spocs {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

const json& field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t as_count(const json& v, const char* key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
    fail(std::string("field \"") + key + "\" must be a positive integer");
  }
  return v.get<std::size_t>();
}

double as_real(const json& v, const std::string& what) {
  if (!v.is_number()) fail(what + " must be a number");
  return v.get<double>();
}

Complex as_complex(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2) fail(what + " must be an [re, im] pair");
  return {as_real(v[0], what), as_real(v[1], what)};
}

CVector as_cvector(const json& v, std::size_t n, const std::string& what) {
  if (!v.is_array() || v.size() != n) {
    fail(what + " must hold " + std::to_string(n) + " complex entries");
  }
  CVector out(static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    out(static_cast<Index>(i)) = as_complex(v[i], what + "[" + std::to_string(i) + "]");
  }
  return out;
}

// Scalar broadcast to all users, or one value per user.
std::vector<double> per_user(const json& v, std::size_t k, const char* key) {
  if (v.is_number()) return std::vector<double>(k, v.get<double>());
  if (!v.is_array() || v.size() != k) {
    fail(std::string("field \"") + key + "\" must be a number or an array of K numbers");
  }
  std::vector<double> out;
  out.reserve(k);
  for (const auto& e : v) out.push_back(as_real(e, key));
  return out;
}

PowerCap as_cap(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return PowerCap::unbounded();
    fail("power cap strings other than \"inf\" are not accepted");
  }
  const double p = as_real(v, "power cap");
  try {
    return PowerCap::of(p);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

json cap_to_json(const PowerCap& cap) {
  if (!cap.bounded()) return "inf";
  return cap.value();
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json cvector_to_json(const CVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ProblemInstance parse_instance(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) fail("instance document must be a JSON object");

  ProblemInstance inst;
  inst.antennas = static_cast<Index>(as_count(field(doc, "N"), "N"));
  inst.users = as_count(field(doc, "K"), "K");
  inst.groups = as_count(field(doc, "M"), "M");
  const auto n = static_cast<std::size_t>(inst.antennas);

  const json& groups = field(doc, "group_of");
  if (!groups.is_array() || groups.size() != inst.users) {
    fail("field \"group_of\" must hold K one-based group labels");
  }
  for (const auto& g : groups) {
    if (!g.is_number_integer()) fail("group labels must be integers");
    const auto label = g.get<std::int64_t>();
    if (label < 1 || static_cast<std::size_t>(label) > inst.groups) {
      fail("group label " + std::to_string(label) + " outside 1..M");
    }
    inst.group_of.push_back(static_cast<std::size_t>(label - 1));
  }

  const json& channels = field(doc, "channels");
  if (!channels.is_array() || channels.size() != inst.users) {
    fail("field \"channels\" must hold K channel vectors");
  }
  for (std::size_t k = 0; k < inst.users; ++k) {
    inst.channels.push_back(as_cvector(channels[k], n, "channels[" + std::to_string(k) + "]"));
  }

  inst.sinr_target = per_user(field(doc, "gamma"), inst.users, "gamma");
  inst.noise_power = per_user(field(doc, "sigma2"), inst.users, "sigma2");

  const json& p = field(doc, "p");
  if (p.is_array()) {
    if (p.size() != n) fail("field \"p\" array must hold N caps");
    for (const auto& e : p) inst.antenna_power.push_back(as_cap(e));
  } else {
    inst.antenna_power.assign(n, as_cap(p));
  }

  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    fail(std::string("invalid instance: ") + e.what());
  }
  return inst;
}

std::string instance_to_json(const ProblemInstance& inst) {
  json doc;
  doc["N"] = inst.antennas;
  doc["K"] = inst.users;
  doc["M"] = inst.groups;
  json groups = json::array();
  for (auto g : inst.group_of) groups.push_back(g + 1);
  doc["group_of"] = std::move(groups);
  json channels = json::array();
  for (const auto& h : inst.channels) channels.push_back(cvector_to_json(h));
  doc["channels"] = std::move(channels);
  doc["gamma"] = inst.sinr_target;
  doc["sigma2"] = inst.noise_power;
  json caps = json::array();
  for (const auto& c : inst.antenna_power) caps.push_back(cap_to_json(c));
  doc["p"] = std::move(caps);
  return doc.dump(1) + "\n";
}

Beamformer parse_beamformer(std::string_view text) {
  const json doc = parse_document(text);
  const json& vectors = doc.is_object() ? field(doc, "w") : doc;
  if (!vectors.is_array() || vectors.empty()) fail("beamformer must hold M vectors");
  const std::size_t n = vectors[0].is_array() ? vectors[0].size() : 0;
  Beamformer bf;
  for (std::size_t m = 0; m < vectors.size(); ++m) {
    bf.vectors.push_back(as_cvector(vectors[m], n, "w[" + std::to_string(m) + "]"));
  }
  return bf;
}

std::string beamformer_to_json(const Beamformer& w) {
  json doc;
  doc["M"] = w.groups();
  doc["N"] = w.antennas();
  json vectors = json::array();
  for (const auto& v : w.vectors) vectors.push_back(cvector_to_json(v));
  doc["w"] = std::move(vectors);
  return doc.dump(1) + "\n";
}

std::string trace_to_csv(const SolverTrace& trace) {
  std::string out = kTraceHeader;
  out += '\n';
  for (const auto& r : trace.records) {
    out += std::to_string(r.n);
    for (double v : {r.objective, r.rank_distance, r.max_sinr_residual, r.max_power_residual,
                     r.psd_residual, r.rel_step}) {
      out += ',';
      out += format_number(v);
    }
    out += ',';
    out += std::to_string(r.elapsed_ns);
    out += '\n';
  }
  return out;
}

std::string eval_to_csv_row(const EvalRow& r) {
  std::string out;
  out += std::to_string(r.seed) + ',' + std::to_string(r.antennas) + ',' +
         std::to_string(r.users) + ',' + std::to_string(r.groups);
  for (double v : {r.gamma_db, r.sinr_min_rho_db, r.total_power, r.rho, r.p_sdr}) {
    out += ',';
    out += format_number(v);
  }
  out += ',' + std::to_string(r.solver_iters) + ',' + std::to_string(r.solve_ns);
  return out;
}

std::string sdr_estimate_to_json(const SdrEstimate& est) {
  // Non-finite values are written as strings so the document stays valid JSON.
  auto number = [](double v) -> json {
    if (std::isfinite(v)) return v;
    return format_number(v);
  };
  json doc;
  doc["p_sdr"] = number(est.value);
  doc["reliable"] = est.reliable;
  doc["upper_bound"] = number(est.upper_bound);
  doc["iterations"] = est.iterations;
  doc["polish_iterations"] = est.polish_iterations;
  doc["step_constant"] = number(est.step_constant);
  doc["residuals"] = {{"max_sinr", number(est.residuals.max_sinr())},
                      {"max_power", number(est.residuals.max_power())},
                      {"psd", number(est.residuals.psd)}};
  return doc.dump(1) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace spocs
