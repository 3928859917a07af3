// Command-line front end for the witness library: state construction and
// PPT reports, witness evaluation, parameter scans, and separability-bound
// certification. Machine output is CSV or JSON; every float is printed in
// its shortest round-trip form so identical runs are byte-identical.

#include "qwit/witness.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

// Unwritable --out target; mapped to exit code 3 (parse errors use 2).
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  std::array<char, 32> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("fmt: to_chars failed");
  return std::string(buf.data(), end);
}

const char* fmt_bool(bool b) { return b ? "true" : "false"; }

double parse_double(std::string_view text, const std::string& what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [end, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || end != last)
    throw std::invalid_argument(what + ": not a number: '" + std::string(text) + "'");
  return value;
}

// "kay:a=2.5" or "kye:b=1,c=1".
qwit::DensityMatrix parse_state_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("state spec must look like kay:a=2.5 or kye:b=1,c=1");
  const std::string family = spec.substr(0, colon);
  std::map<std::string, double> kv;
  std::stringstream rest(spec.substr(colon + 1));
  for (std::string item; std::getline(rest, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("state spec: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (kv.count(key)) throw std::invalid_argument("state spec: duplicate key '" + key + "'");
    kv[key] = parse_double(item.substr(eq + 1), "state spec " + key);
  }
  auto take = [&kv](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw std::invalid_argument(std::string("state spec: missing parameter ") + key);
    const double v = it->second;
    kv.erase(it);
    return v;
  };
  qwit::DensityMatrix rho;
  if (family == "kay") {
    rho = qwit::kay_state(take("a"));
  } else if (family == "kye") {
    const double b = take("b");
    rho = qwit::kye_state(b, take("c"));
  } else {
    throw std::invalid_argument("unknown state family: '" + family + "' (want kay or kye)");
  }
  if (!kv.empty())
    throw std::invalid_argument("state spec: unknown parameter '" + kv.begin()->first + "'");
  return rho;
}

qwit::Witness witness_or_throw(const std::string& label) {
  auto w = qwit::witness_from_label(label);
  if (!w)
    throw std::invalid_argument("unknown witness label: '" + label +
                                "' (want W1, W2 or W<perm><+|->, e.g. Wxzy-)");
  return *std::move(w);
}

// --- record serialization -------------------------------------------------

constexpr const char* kRecordHeader =
    "family,param_a,param_b,param_c,witness,expectation,detected,ppt_q1,ppt_q2,ppt_q3";

std::array<std::string, 3> param_columns(const std::map<std::string, double>& params) {
  std::array<std::string, 3> cols;
  const char* keys[] = {"a", "b", "c"};
  for (int i = 0; i < 3; ++i)
    if (const auto it = params.find(keys[i]); it != params.end()) cols[i] = fmt(it->second);
  return cols;
}

std::string record_csv_row(const qwit::DetectionRecord& rec) {
  const auto cols = param_columns(rec.params);
  std::string row = qwit::family_name(rec.family);
  for (const auto& col : cols) row += "," + col;
  row += "," + rec.witness;
  row += "," + fmt(rec.expectation);
  row += std::string(",") + fmt_bool(rec.detected);
  for (const bool flag : rec.ppt) row += std::string(",") + fmt_bool(flag);
  return row;
}

ordered_json record_json(const qwit::DetectionRecord& rec) {
  ordered_json j;
  j["family"] = qwit::family_name(rec.family);
  j["params"] = rec.params;
  j["witness"] = rec.witness;
  j["expectation"] = rec.expectation;
  j["detected"] = rec.detected;
  j["ppt"] = rec.ppt;
  return j;
}

// The closed forms exist for W1 on the Kay family and W2 on the Kye family.
std::optional<double> closed_form_for(const qwit::Witness& w, const qwit::DensityMatrix& rho) {
  if (!w.perm.is_identity()) return std::nullopt;
  if (w.sign == +1 && rho.family == qwit::StateFamily::Kay)
    return qwit::closed_form_kay(rho.params.at("a"));
  if (w.sign == -1 && rho.family == qwit::StateFamily::Kye)
    return qwit::closed_form_kye(rho.params.at("b"), rho.params.at("c"));
  return std::nullopt;
}

// --- output plumbing --------------------------------------------------------

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw FileError("cannot open output file: " + path);
  file << text;
  file.flush();
  if (!file.good()) throw FileError("write failed: " + path);
}

// Records go to --out when given (summary then prints to stdout); otherwise
// records own stdout and the summary moves to stderr.
void emit_records(const std::string& out_path, const std::string& records,
                  const std::string& summary) {
  if (!out_path.empty()) {
    write_text(out_path, records);
    std::cout << summary << '\n';
  } else {
    std::cout << records;
    std::cerr << summary << '\n';
  }
}

std::string render_records(const std::vector<qwit::DetectionRecord>& records,
                           const std::string& format) {
  if (format == "csv") {
    std::string text = kRecordHeader;
    text += '\n';
    for (const auto& rec : records) {
      text += record_csv_row(rec);
      text += '\n';
    }
    return text;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& rec : records) arr.push_back(record_json(rec));
  return arr.dump(2) + "\n";
}

// Detection boundary: the first adjacent pair of grid points whose detected
// flags differ, reported via the varying parameter.
std::string scan_summary(const std::string& family, const std::string& param_key,
                         const std::vector<qwit::DetectionRecord>& records) {
  std::size_t detected = 0;
  for (const auto& rec : records) detected += rec.detected ? 1 : 0;
  std::string line = "scan " + family + ": " + std::to_string(records.size()) +
                     " points, detected " + std::to_string(detected) + "/" +
                     std::to_string(records.size());
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    if (records[i].detected != records[i + 1].detected) {
      line += ", boundary bracket [" + fmt(records[i].params.at(param_key)) + ", " +
              fmt(records[i + 1].params.at(param_key)) + "]";
      return line;
    }
  }
  return line + ", no sign change";
}

// --- subcommand bodies ------------------------------------------------------

void run_state(const qwit::DensityMatrix& rho, bool want_ppt, bool want_eigs,
               const std::string& format) {
  std::optional<Eigen::VectorXd> eigs;
  if (want_eigs) eigs = qwit::hermitian_eigenvalues(rho.mat);
  std::optional<std::array<bool, 3>> ppt;
  if (want_ppt) ppt = qwit::is_ppt(rho);

  if (format == "json") {
    ordered_json j;
    j["family"] = qwit::family_name(rho.family);
    j["params"] = rho.params;
    j["trace"] = rho.mat.trace().real();
    j["hermitian"] = qwit::is_hermitian(rho.mat);
    if (eigs) {
      j["eigenvalues"] = std::vector<double>(eigs->data(), eigs->data() + eigs->size());
      j["min_eigenvalue"] = (*eigs)(0);
    }
    if (ppt) j["ppt"] = *ppt;
    std::cout << j.dump(2) << '\n';
    return;
  }
  const auto cols = param_columns(rho.params);
  std::string header = "family,param_a,param_b,param_c,trace";
  std::string row = qwit::family_name(rho.family);
  for (const auto& col : cols) row += "," + col;
  row += "," + fmt(rho.mat.trace().real());
  if (eigs) {
    header += ",min_eigenvalue,eigenvalues";
    row += "," + fmt((*eigs)(0)) + ",";
    for (Eigen::Index i = 0; i < eigs->size(); ++i)
      row += (i ? ";" : "") + fmt((*eigs)(i));
  }
  if (ppt) {
    header += ",ppt_q1,ppt_q2,ppt_q3";
    for (const bool flag : *ppt) row += std::string(",") + fmt_bool(flag);
  }
  std::cout << header << '\n' << row << '\n';
}

void run_eval(const std::string& witness_label, const std::string& state_spec,
              const std::string& format) {
  const qwit::Witness w = witness_or_throw(witness_label);
  const qwit::DensityMatrix rho = parse_state_spec(state_spec);
  const qwit::DetectionRecord rec = qwit::evaluate(w, rho);
  const std::optional<double> cf = closed_form_for(w, rho);

  if (format == "json") {
    ordered_json j = record_json(rec);
    if (cf) {
      j["closed_form"] = *cf;
      j["closed_form_diff"] = std::abs(rec.expectation - *cf);
    }
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::string header = std::string(kRecordHeader) + ",closed_form,closed_form_diff";
  std::string row = record_csv_row(rec);
  row += cf ? "," + fmt(*cf) + "," + fmt(std::abs(rec.expectation - *cf)) : ",,";
  std::cout << header << '\n' << row << '\n';
}

void run_certify(const std::string& witness_label, const qwit::OptimizerConfig& config,
                 const std::string& format) {
  std::vector<qwit::CertificationReport> reports;
  if (witness_label == "all") {
    for (const auto& w : qwit::witness_family())
      reports.push_back(qwit::certify_witness(w, config));
  } else {
    reports.push_back(qwit::certify_witness(witness_or_throw(witness_label), config));
  }

  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& rep : reports) {
      ordered_json j;
      j["witness"] = rep.witness;
      j["max_angle_objective"] = rep.max_angle_objective;
      j["min_expectation"] = rep.min_expectation;
      j["bound"] = "lower";  // sampled maxima only ever bound the true max from below
      j["pass"] = rep.pass;
      j["converged"] = rep.optimum.converged;
      j["evaluations"] = rep.optimum.evaluations;
      const auto& p = rep.optimum.best_point;
      j["best_angles"] = {{"theta1", p[0]}, {"theta2", p[1]}, {"theta3", p[2]},
                          {"phi1", p[3]},   {"phi2", p[4]},   {"phi3", p[5]}};
      arr.push_back(std::move(j));
    }
    std::cout << (reports.size() == 1 ? arr[0] : arr).dump(2) << '\n';
    return;
  }
  std::cout << "witness,max_angle_objective,min_expectation,bound,pass,converged,"
               "evaluations,theta1,theta2,theta3,phi1,phi2,phi3\n";
  for (const auto& rep : reports) {
    std::cout << rep.witness << ',' << fmt(rep.max_angle_objective) << ','
              << fmt(rep.min_expectation) << ",lower," << fmt_bool(rep.pass) << ','
              << fmt_bool(rep.optimum.converged) << ',' << rep.optimum.evaluations;
    for (const double angle : rep.optimum.best_point) std::cout << ',' << fmt(angle);
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-qubit entanglement witnesses for the Kay and Kye state families"};
  app.require_subcommand(1);

  // ---- state ----
  auto* state = app.add_subcommand("state", "Build a family state and report its invariants");
  state->require_subcommand(1);
  struct {
    double a = 0, b = 0, c = 0;
    bool ppt = false, eigs = false;
    std::string format = "json";
  } st;
  const auto add_state_flags = [&st](CLI::App* cmd) {
    cmd->add_flag("--ppt", st.ppt, "report per-qubit PPT flags");
    cmd->add_flag("--eigs", st.eigs, "report the eigenvalue list");
    cmd->add_option("--format", st.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };
  auto* state_kay = state->add_subcommand("kay", "Kay family rho(a), a >= 2");
  state_kay->add_option("--a", st.a, "family parameter a")->required();
  add_state_flags(state_kay);
  state_kay->callback([&st] { run_state(qwit::kay_state(st.a), st.ppt, st.eigs, st.format); });
  auto* state_kye = state->add_subcommand("kye", "Kye family rho(b,c), b,c > 0, bc >= 1");
  state_kye->add_option("--b", st.b, "family parameter b")->required();
  state_kye->add_option("--c", st.c, "family parameter c")->required();
  add_state_flags(state_kye);
  state_kye->callback(
      [&st] { run_state(qwit::kye_state(st.b, st.c), st.ppt, st.eigs, st.format); });

  // ---- eval ----
  auto* eval = app.add_subcommand("eval", "Evaluate one witness on one state");
  struct {
    std::string witness, state, format = "json";
  } ev;
  eval->add_option("--witness", ev.witness, "witness label (W1, W2, Wxzy-, ...)")->required();
  eval->add_option("--state", ev.state, "state spec, e.g. kay:a=2.5 or kye:b=1,c=1")
      ->required();
  eval->add_option("--format", ev.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  eval->callback([&ev] { run_eval(ev.witness, ev.state, ev.format); });

  // ---- scan ----
  auto* scan = app.add_subcommand("scan", "Evaluate a witness across a parameter grid");
  scan->require_subcommand(1);
  struct {
    double a_min = 2, a_max = 3, b_min = 0, b_max = 0;
    int steps = 0;
    std::string witness_kay = "W1", witness_kye = "W2";
    std::string c_rule = "inverse", out, format = "csv";
  } sc;
  const auto add_scan_flags = [&sc](CLI::App* cmd, std::string& witness) {
    cmd->add_option("--steps", sc.steps, "grid points (inclusive endpoints)")->required();
    cmd->add_option("--witness", witness, "witness label")->capture_default_str();
    cmd->add_option("--out", sc.out, "write records to this file instead of stdout");
    cmd->add_option("--format", sc.format, "record format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };
  auto* scan_kay = scan->add_subcommand("kay", "scan rho_Kay(a) over [a-min, a-max]");
  scan_kay->add_option("--a-min", sc.a_min, "left endpoint")->required();
  scan_kay->add_option("--a-max", sc.a_max, "right endpoint")->required();
  add_scan_flags(scan_kay, sc.witness_kay);
  scan_kay->callback([&sc] {
    const auto records =
        qwit::scan_kay(sc.a_min, sc.a_max, sc.steps, witness_or_throw(sc.witness_kay));
    emit_records(sc.out, render_records(records, sc.format),
                 scan_summary("kay", "a", records));
  });
  auto* scan_kye = scan->add_subcommand("kye", "scan rho_Kye(b, c(b)) over [b-min, b-max]");
  scan_kye->add_option("--b-min", sc.b_min, "left endpoint")->required();
  scan_kye->add_option("--b-max", sc.b_max, "right endpoint")->required();
  scan_kye->add_option("--c", sc.c_rule, "rule for c: 'inverse' (c = 1/b) or a fixed number")
      ->capture_default_str();
  add_scan_flags(scan_kye, sc.witness_kye);
  scan_kye->callback([&sc] {
    if (!(sc.b_min > 0)) throw std::invalid_argument("scan kye: b-min must be > 0");
    if (!(sc.b_min < sc.b_max)) throw std::invalid_argument("scan kye: need b-min < b-max");
    if (sc.steps < 2) throw std::invalid_argument("scan kye: steps must be >= 2");
    std::vector<double> bs;
    bs.reserve(static_cast<std::size_t>(sc.steps));
    for (int k = 0; k < sc.steps; ++k)
      bs.push_back(sc.b_min + static_cast<double>(k) * (sc.b_max - sc.b_min) /
                                  static_cast<double>(sc.steps - 1));
    const qwit::CRule rule = sc.c_rule == "inverse"
                                 ? qwit::CRule::make_inverse()
                                 : qwit::CRule::make_fixed(parse_double(sc.c_rule, "--c"));
    const auto records = qwit::scan_kye(bs, rule, witness_or_throw(sc.witness_kye));
    emit_records(sc.out, render_records(records, sc.format),
                 scan_summary("kye", "b", records));
  });

  // ---- certify ----
  auto* certify =
      app.add_subcommand("certify", "Maximize the product-state objective for a witness");
  struct {
    std::string witness, format = "json";
    qwit::OptimizerConfig config;
  } ct;
  certify->add_option("--witness", ct.witness, "witness label or 'all'")->required();
  certify->add_option("--grid", ct.config.grid_points_per_axis, "coarse grid points per axis")
      ->capture_default_str();
  certify->add_option("--refine", ct.config.refine_iterations, "refinement iteration cap")
      ->capture_default_str();
  certify->add_option("--tol", ct.config.tolerance, "convergence tolerance")
      ->capture_default_str();
  certify->add_option("--seed", ct.config.seed, "low-discrepancy stream offset")
      ->capture_default_str();
  certify->add_option("--format", ct.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  certify->callback([&ct] { run_certify(ct.witness, ct.config, ct.format); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 2;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
