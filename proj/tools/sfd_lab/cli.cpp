#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <utility>

#include "sfd/errors.hpp"
#include "sfd/fpe.hpp"
#include "sfd/gle.hpp"
#include "sfd/mlf.hpp"
#include "sfd/msd_models.hpp"
#include "sfd/simulate.hpp"

namespace sfd::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- formatting

double round12(double v) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_number(v);
  double r = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), r);
  return r;
}

json json_number(double v) {
  if (std::isfinite(v)) return round12(v);
  return format_number(v);  // JSON has no inf/nan literals
}

json json_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    double v = 0.0;
    const char* first = item.data() + b;
    const char* last = item.data() + e + 1;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
      throw ParameterError(std::string(what) + ": cannot parse '" + item + "' as a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ParameterError(std::string(what) + ": empty list");
  return out;
}

// ------------------------------------------------------------ config + echo

// Resolved settings of one run, in registration order.
class Registry {
 public:
  void add(std::string key, std::function<std::optional<std::string>()> value) {
    entries_.emplace_back(std::move(key), std::move(value));
  }
  std::vector<std::pair<std::string, std::string>> resolved() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, f] : entries_) {
      if (auto v = f()) out.emplace_back(k, *v);
    }
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::function<std::optional<std::string>()>>> entries_;
};

struct Command {
  CLI::App* app = nullptr;
  Registry echo;

  CLI::Option* number(const std::string& key, double& var, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + key, var, help);
    echo.add(key, [opt, &var]() -> std::optional<std::string> {
      return opt->count() ? opt->results().back() : format_number(var);
    });
    return opt;
  }
  CLI::Option* integer(const std::string& key, int& var, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + key, var, help);
    echo.add(key, [opt, &var]() -> std::optional<std::string> {
      return opt->count() ? opt->results().back() : std::to_string(var);
    });
    return opt;
  }
  CLI::Option* text(const std::string& key, std::string& var, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + key, var, help);
    echo.add(key, [&var]() -> std::optional<std::string> {
      if (var.empty()) return std::nullopt;
      return var;
    });
    return opt;
  }
  // Echoed only when given.
  CLI::Option* optional_number(const std::string& key, std::optional<double>& var, const std::string& help) {
    CLI::Option* opt = app->add_option_function<double>("--" + key, [&var](const double& v) { var = v; }, help);
    echo.add(key, [opt]() -> std::optional<std::string> {
      if (!opt->count()) return std::nullopt;
      return opt->results().back();
    });
    return opt;
  }
  CLI::Option* unsigned_integer(const std::string& key, std::uint64_t& var, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + key, var, help);
    echo.add(key, [opt, &var]() -> std::optional<std::string> {
      return opt->count() ? opt->results().back() : std::to_string(var);
    });
    return opt;
  }
  CLI::Option* flag(const std::string& key, bool& var, const std::string& help) {
    CLI::Option* opt = app->add_flag("--" + key, var, help);
    echo.add(key, [&var]() -> std::optional<std::string> { return std::string(var ? "true" : "false"); });
    return opt;
  }
};

struct GridArgs {
  double t_min;
  double t_max;
  int ppd;
};

void add_grid(Command& c, GridArgs& g) {
  c.number("t-min", g.t_min, "first time of the log grid");
  c.number("t-max", g.t_max, "last time of the log grid");
  c.integer("ppd", g.ppd, "grid points per decade");
}

struct GleArgs {
  GleParams p;
  std::optional<double> a;
  std::optional<double> v0;
};

void add_gle(Command& c, GleArgs& g) {
  c.number("alpha", g.p.alpha, "inertial order alpha in (0, 1]");
  c.number("gamma", g.p.gamma, "memory exponent gamma in (0, 1]");
  c.number("lambda1", g.p.lambda1, "white friction weight");
  c.number("lambda2", g.p.lambda2, "power-law friction weight");
  c.number("kappa", g.p.kappa, "force exponent kappa in (0, 1]");
  c.optional_number("a", g.a, "force amplitude (default a1 sqrt(kT))");
  c.number("a1", g.p.force_a1, "equipartition factor of the default force");
  c.number("kT", g.p.kT, "thermal energy");
  c.number("x0", g.p.x0, "initial position");
  c.optional_number("v0", g.v0, "initial velocity (default sqrt(kT))");
  c.flag("overdamped", g.p.overdamped, "drop the fractional acceleration");
}

GleParams resolve(const GleArgs& g) {
  GleParams p = g.p;
  p.force_amp = g.a;
  p.v0 = g.v0;
  p.validate();
  return p;
}

// Reads key=value lines.  Files that carry "#@ " echo lines (CSV outputs of
// this tool) contribute only those; JSON outputs contribute their config.* keys.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();

  std::vector<std::pair<std::string, std::string>> out;
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && content[first] == '{') {
    json j;
    try {
      j = json::parse(content);
    } catch (const json::exception& e) {
      throw ParameterError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    for (const auto& [k, v] : j.items()) {
      if (k.rfind("config.", 0) == 0) out.emplace_back(k.substr(7), v.get<std::string>());
    }
    return out;
  }

  const bool echo_mode = content.find("#@ ") != std::string::npos;
  std::stringstream lines(content);
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (echo_mode) {
      if (line.rfind("#@ ", 0) != 0) continue;
      line = line.substr(3);
    } else {
      const auto b = line.find_first_not_of(" \t");
      if (b == std::string::npos || line[b] == '#') continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError(path + ":" + std::to_string(number) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

// ------------------------------------------------------------------ output

struct PendingFile {
  std::string path;  // empty means the standard output stream
  std::string content;
};

std::string echo_block(const std::string& command, const Registry& reg) {
  std::string s = "#@ command=" + command + "\n";
  for (const auto& [k, v] : reg.resolved()) s += "#@ " + k + "=" + v + "\n";
  return s;
}

void add_echo(json& j, const std::string& command, const Registry& reg) {
  j["config.command"] = command;
  for (const auto& [k, v] : reg.resolved()) j["config." + k] = v;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // per column

  std::string csv() const {
    std::string s;
    for (std::size_t c = 0; c < columns.size(); ++c) s += (c ? "," : "") + columns[c];
    s += "\n";
    const std::size_t rows = data.empty() ? 0 : data.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < columns.size(); ++c) s += (c ? "," : "") + format_number(data[c][r]);
      s += "\n";
    }
    return s;
  }
  void into(json& j) const {
    for (std::size_t c = 0; c < columns.size(); ++c) j[columns[c]] = json_array(data[c]);
  }
};

// Writes every file to a temporary sibling first and renames only when all
// have been written, so a failure never leaves partial outputs behind.
void commit(const std::vector<PendingFile>& files, std::ostream& out) {
  std::vector<std::pair<fs::path, fs::path>> staged;
  try {
    for (const auto& f : files) {
      if (f.path.empty()) continue;
      fs::path target(f.path);
      fs::path tmp = target;
      tmp += ".partial";
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) throw std::runtime_error("cannot write '" + tmp.string() + "'");
      staged.emplace_back(tmp, target);
      os << f.content;
      os.close();
      if (!os) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    for (const auto& [tmp, target] : staged) fs::rename(tmp, target);
  } catch (...) {
    std::error_code ec;
    for (const auto& [tmp, target] : staged) fs::remove(tmp, ec);
    throw;
  }
  for (const auto& f : files) {
    if (f.path.empty()) out << f.content;
  }
}

// --------------------------------------------------------------- commands

struct Common {
  std::string output;
  std::string format;  ///< empty until resolved against the command default
};

PendingFile emit(const std::string& command, const Registry& reg, const Common& common, const Table& table,
                 const std::string& extra_comments = {}, const json& extra_json = json::object()) {
  if (common.format == "json") {
    json j = json::object();
    add_echo(j, command, reg);
    for (const auto& [k, v] : extra_json.items()) j[k] = v;
    table.into(j);
    return {common.output, j.dump(1) + "\n"};
  }
  return {common.output, echo_block(command, reg) + extra_comments + table.csv()};
}

CaseTag infer_case(const GleParams& p) {
  if (p.overdamped) return CaseTag::case3a;
  if (p.lambda2 > 0.0) return p.lambda1 == 0.0 ? CaseTag::case3b : CaseTag::case3;
  return CaseTag::case1;
}

std::string law_line(const AsymptoticLaw& law) {
  std::string s = "#law quantity=" + law.quantity + " regime=" + to_string(law.regime) +
                  " exponent=" + format_number(law.exponent);
  if (law.prefactor) s += " prefactor=" + format_number(*law.prefactor);
  if (law.logarithmic) s += " logarithmic=true";
  if (!law.condition.empty()) s += " condition=\"" + law.condition + "\"";
  return s + "\n";
}


}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  std::string s(buf, res.ptr);
  // Trim trailing zeros of the mantissa ("2.50000000000" -> "2.5").
  const auto e = s.find('e');
  std::string mant = s.substr(0, e);
  const std::string expo = e == std::string::npos ? "" : s.substr(e);
  if (mant.find('.') != std::string::npos) {
    while (!mant.empty() && mant.back() == '0') mant.pop_back();
    if (!mant.empty() && mant.back() == '.') mant.pop_back();
  }
  return mant + expo;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sfd_lab: fractional Langevin models of single-file diffusion"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  Common common;

  std::vector<PendingFile> files;
  std::map<std::string, std::function<void()>> actions;
  std::map<std::string, Command> commands;

  auto make = [&](const std::string& name, const std::string& help) -> Command& {
    Command& c = commands[name];
    c.app = app.add_subcommand(name, help);
    c.app->add_option("--config", config_path, "key=value file (or a previous output) to read settings from");
    c.app->add_option("--output", common.output, "output file (default: standard output)");
    c.text("format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    return c;
  };

  // ml
  double ml_alpha = 1.0, ml_beta = 1.0, z_min = -10.0, z_max = 0.0;
  std::optional<double> z_single;
  int z_count = 101;
  {
    Command& c = make("ml", "evaluate E_{alpha,beta}(z) at one point or on a linear grid");
    c.number("alpha", ml_alpha, "order alpha in (0, 2]");
    c.number("beta", ml_beta, "order beta > 0");
    c.optional_number("z", z_single, "single argument (prints the bare value unless --output is given)");
    c.number("z-min", z_min, "grid start");
    c.number("z-max", z_max, "grid end");
    c.integer("z-count", z_count, "grid points");
    actions["ml"] = [&] {
      const MLOrder order(ml_alpha, ml_beta);
      if (z_single && common.output.empty() && common.format == "csv") {
        files.push_back({"", format_number(ml_eval(order, *z_single)) + "\n"});
        return;
      }
      std::vector<double> zs;
      if (z_single) {
        zs.push_back(*z_single);
      } else {
        if (z_count < 1) throw ParameterError("ml: z-count must be positive");
        for (int i = 0; i < z_count; ++i) {
          zs.push_back(z_count == 1 ? z_min : z_min + (z_max - z_min) * i / (z_count - 1));
        }
      }
      Table t{{"z", "value", "error_bound"}, {zs, {}, {}}};
      std::vector<std::string> methods;
      for (double z : zs) {
        const MLEvaluation e = ml_evaluate(order, z);
        t.data[1].push_back(e.value);
        t.data[2].push_back(e.error_bound);
        methods.push_back(to_string(e.method));
      }
      if (common.format == "json") {
        json extra;
        extra["method"] = methods;
        files.push_back(emit("ml", commands["ml"].echo, common, t, {}, extra));
        return;
      }
      // The method column is text, so it is appended by hand.
      std::string csv = echo_block("ml", commands["ml"].echo) + "z,value,error_bound,method\n";
      for (std::size_t i = 0; i < zs.size(); ++i) {
        csv += format_number(zs[i]) + "," + format_number(t.data[1][i]) + "," + format_number(t.data[2][i]) + "," +
               methods[i] + "\n";
      }
      files.push_back({common.output, csv});
    };
  }

  // gle-msd
  GleArgs gle_msd;
  GridArgs gle_grid{1e-2, 1e2, 10};
  std::string case_name;
  std::optional<double> noise_exponent;
  bool paper_case3a = false;
  {
    Command& c = make("gle-msd", "mean, variance and MSD of the fractional GLE with its limit laws");
    add_gle(c, gle_msd);
    add_grid(c, gle_grid);
    c.text("case", case_name, "case tag for the limit laws (case1, case2, case3, case3a, case3b)");
    c.optional_number("noise-exponent", noise_exponent, "case2 noise exponent (default gamma)");
    c.flag("paper-literal-case3a", paper_case3a, "use Gamma(1-gamma) in the case3a long-time prefactor");
    actions["gle-msd"] = [&] {
      const GleParams p = resolve(gle_msd);
      const CaseTag tag = case_name.empty() ? infer_case(p) : parse_case_tag(case_name);
      const auto laws = asymptotic_laws(p, tag, {noise_exponent, paper_case3a});
      const std::vector<double> ts = log_grid(gle_grid.t_min, gle_grid.t_max, gle_grid.ppd);
      Table t{{"t", "mean", "variance", "msd"}, {ts, {}, {}, {}}};
      for (double time : ts) {
        const MsdPoint m = msd_components(p, time);
        t.data[1].push_back(m.mean);
        t.data[2].push_back(m.variance);
        t.data[3].push_back(m.msd);
      }
      std::string comments;
      json extra;
      extra["case"] = to_string(tag);
      json q = json::array(), r = json::array(), e = json::array(), pf = json::array(), lg = json::array(),
           cond = json::array();
      for (const auto& law : laws) {
        comments += law_line(law);
        q.push_back(law.quantity);
        r.push_back(to_string(law.regime));
        e.push_back(json_number(law.exponent));
        pf.push_back(law.prefactor ? json_number(*law.prefactor) : json(nullptr));
        lg.push_back(law.logarithmic);
        cond.push_back(law.condition);
      }
      extra["law_quantity"] = q;
      extra["law_regime"] = r;
      extra["law_exponent"] = e;
      extra["law_prefactor"] = pf;
      extra["law_logarithmic"] = lg;
      extra["law_condition"] = cond;
      files.push_back(emit("gle-msd", commands["gle-msd"].echo, common, t,
                           "#case " + std::string(to_string(tag)) + "\n" + comments, extra));
    };
  }

  // models
  PhysicalChannel ch;
  double kT = 1.0, beta = 2.0;
  std::string convention = "matched";
  int figure = 0;
  GridArgs model_grid{1e-4, 1e6, 20};
  {
    Command& c = make("models", "Brandani, Lin, Mittag-Leffler family and three-regime MSD curves");
    c.number("l", ch.l, "jump length");
    c.number("theta", ch.theta, "fractional occupancy in (0, 1)");
    c.number("tau", ch.tau, "mean time between jumps");
    c.number("kT", kT, "thermal energy");
    c.number("beta", beta, "Mittag-Leffler family index (>= 1)");
    c.text("lambda-convention", convention, "matched or paper")->check(CLI::IsMember({"matched", "paper"}));
    c.integer("figure", figure, "1: 2tE_{1/2,2}(-sqrt t); 2 or 3: 2t^2E_{3/2,3}(-t^{3/2}); 0: all models")
        ->check(CLI::Range(0, 3));
    add_grid(c, model_grid);
    actions["models"] = [&] {
      const std::vector<double> ts = log_grid(model_grid.t_min, model_grid.t_max, model_grid.ppd);
      if (figure != 0) {
        const auto curve = figure == 1
                               ? sample_curve([](double t) { return 2.0 * ml_kernel(MLOrder(0.5, 2.0), 1.0, 1.0, t); },
                                              ts, "figure1")
                               : sample_curve([](double t) { return 2.0 * ml_kernel(MLOrder(1.5, 3.0), 1.0, 2.0, t); },
                                              ts, "figure" + std::to_string(figure));
        std::vector<double> slope;
        for (const auto& s : local_exponent(curve)) slope.push_back(s.slope);
        files.push_back(emit("models", commands["models"].echo, common, {{"t", "msd", "exponent"}, {ts, curve.values, slope}}));
        return;
      }
      const LambdaConvention conv = convention == "paper" ? LambdaConvention::paper : LambdaConvention::matched;
      const double lambda2 = three_regime_lambda2(kT, ch.F());
      Table t{{"t", "brandani", "lin", "ml_family", "three_regime"}, {ts, {}, {}, {}, {}}};
      for (double time : ts) {
        t.data[1].push_back(brandani_msd(ch, time));
        t.data[2].push_back(lin_msd(ch.D0(), ch.F(), time));
        t.data[3].push_back(ml_family_msd(ch, beta, kT, time, conv));
        t.data[4].push_back(three_regime_msd(kT, lambda2, time));
      }
      files.push_back(emit("models", commands["models"].echo, common, t));
    };
  }

  // calibrate
  PhysicalChannel cal_ch;
  double cal_kT = 1.0, cal_beta = 2.0;
  {
    Command& c = make("calibrate", "D0, F and the Mittag-Leffler family constants of a channel");
    c.number("l", cal_ch.l, "jump length");
    c.number("theta", cal_ch.theta, "fractional occupancy in (0, 1)");
    c.number("tau", cal_ch.tau, "mean time between jumps");
    c.number("kT", cal_kT, "thermal energy");
    c.number("beta", cal_beta, "Mittag-Leffler family index (>= 1)");
    actions["calibrate"] = [&] {
      if (common.format.empty()) common.format = "json";
      const FamilyCalibration f = calibrate_family(cal_ch, cal_beta, cal_kT);
      const std::vector<std::pair<std::string, double>> rows = {
          {"D0", cal_ch.D0()},          {"F", cal_ch.F()}, {"zeta", f.zeta_prime}, {"lambda", f.lambda_prime},
          {"lambda_paper", f.lambda_prime_paper}, {"three_regime_lambda2", three_regime_lambda2(cal_kT, cal_ch.F())}};
      if (common.format == "json") {
        json j = json::object();
        add_echo(j, "calibrate", commands["calibrate"].echo);
        for (const auto& [k, v] : rows) j[k] = json_number(v);
        files.push_back({common.output, j.dump(1) + "\n"});
        return;
      }
      std::string csv = echo_block("calibrate", commands["calibrate"].echo) + "name,value\n";
      for (const auto& [k, v] : rows) csv += k + "," + format_number(v) + "\n";
      files.push_back({common.output, csv});
    };
  }

  // regimes
  std::string input, column_name, targets_text = "2,1,0.5";
  double tol = 0.05;
  {
    Command& c = make("regimes", "local exponents and regime intervals of an MSD curve file");
    c.text("input", input, "CSV with a header row, t in the first column")->required();
    c.text("column", column_name, "value column (default: the second column)");
    c.text("targets", targets_text, "comma-separated target exponents");
    c.number("tol", tol, "tolerance on |slope - target|");
    actions["regimes"] = [&] {
      std::ifstream in(input);
      if (!in) throw ParameterError("regimes: cannot open '" + input + "'");
      std::string line;
      std::vector<std::string> header;
      MsdCurve curve;
      curve.model_tag = input;
      std::size_t col = 1;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (header.empty()) {
          header = cells;
          if (!column_name.empty()) {
            const auto it = std::find(header.begin(), header.end(), column_name);
            if (it == header.end()) throw ParameterError("regimes: no column named '" + column_name + "'");
            col = static_cast<std::size_t>(it - header.begin());
          }
          if (col >= header.size() || col == 0) throw ParameterError("regimes: input needs a value column after t");
          continue;
        }
        if (cells.size() != header.size()) throw ParameterError("regimes: ragged row '" + line + "'");
        curve.times.push_back(parse_list(cells[0], "regimes")[0]);
        curve.values.push_back(parse_list(cells[col], "regimes")[0]);
      }
      const std::vector<double> targets = parse_list(targets_text, "targets");
      const auto slopes = local_exponent(curve);
      const auto intervals = regime_boundaries(curve, targets, tol);
      Table t{{"t", "slope"}, {{}, {}}};
      for (const auto& s : slopes) {
        t.data[0].push_back(s.t);
        t.data[1].push_back(s.slope);
      }
      std::string comments;
      json extra;
      std::vector<double> ex, en, xt;
      for (const auto& iv : intervals) {
        comments += "#regime exponent=" + format_number(iv.exponent) + " t_enter=" + format_number(iv.t_enter) +
                    " t_exit=" + format_number(iv.t_exit) + "\n";
        ex.push_back(iv.exponent);
        en.push_back(iv.t_enter);
        xt.push_back(iv.t_exit);
      }
      extra["regime_exponent"] = json_array(ex);
      extra["regime_t_enter"] = json_array(en);
      extra["regime_t_exit"] = json_array(xt);
      files.push_back(emit("regimes", commands["regimes"].echo, common, t, comments, extra));
    };
  }

  // simulate
  GleArgs sim;
  sim.p.overdamped = true;
  sim.p.lambda1 = 1.0;
  double dt = 1e-2;
  int steps = 1000, paths = 1000, stride = 1;
  std::uint64_t seed = 1;
  {
    Command& c = make("simulate", "Monte Carlo ensemble MSD against the analytic curve");
    add_gle(c, sim);
    c.number("dt", dt, "time step");
    c.integer("steps", steps, "steps per path");
    c.integer("paths", paths, "ensemble size");
    c.unsigned_integer("seed", seed, "master seed");
    c.integer("stride", stride, "write every stride-th step");
    actions["simulate"] = [&] {
      if (stride < 1) throw ParameterError("simulate: stride must be positive");
      const GleParams p = resolve(sim);
      const TrajectoryEnsemble e = simulate_paths(p, dt, steps, paths, seed);
      const MsdCurve m = ensemble_msd(e);
      Table t{{"t", "msd", "stderr", "analytic"}, {{}, {}, {}, {}}};
      for (std::size_t i = static_cast<std::size_t>(stride) - 1; i < m.times.size(); i += stride) {
        t.data[0].push_back(m.times[i]);
        t.data[1].push_back(m.values[i]);
        t.data[2].push_back(m.stderr_values[i]);
        t.data[3].push_back(msd(p, m.times[i]));
      }
      files.push_back(emit("simulate", commands["simulate"].echo, common, t));
    };
  }

  // fpe
  double D0 = 1.0, F = 1.0, half_width = 0.0, sigma0 = 0.0, step_fraction = 0.01;
  int nx = 2001;
  std::string variant = "matched", snapshots;
  GridArgs fpe_grid{1.0, 1e4, 2};
  {
    Command& c = make("fpe", "solve the effective Fokker-Planck equation");
    c.number("D0", D0, "short-time diffusion coefficient");
    c.number("F", F, "SFD mobility (inf gives constant D0)");
    c.number("half-width", half_width, "domain half width (0: chosen from the final variance)");
    c.integer("nx", nx, "spatial grid points");
    c.text("variant", variant, "matched or paper")->check(CLI::IsMember({"matched", "paper"}));
    c.number("sigma0", sigma0, "initial standard deviation (0: four cells)");
    c.number("step-fraction", step_fraction, "effective-time step relative to the current variance");
    add_grid(c, fpe_grid);
    c.text("snapshots", snapshots, "directory for per-time density CSV files");
    actions["fpe"] = [&] {
      const DiffusionVariant v = parse_diffusion_variant(variant.c_str());
      const std::vector<double> ts = log_grid(fpe_grid.t_min, fpe_grid.t_max, fpe_grid.ppd);
      double width = half_width;
      if (width == 0.0) {
        // Grow until the initial width (set by the cells) and the spread agree.
        const double s_end = integrated_diffusion(D0, F, ts.back(), v);
        width = 1.0;
        for (int it = 0; it < 50; ++it) {
          const double dx = 2.0 * width / (nx - 1);
          const double s0 = sigma0 > 0.0 ? sigma0 : 4.0 * dx;
          const double need = 1.25 * std::sqrt(2.0 * (s0 * s0 + 2.0 * s_end) * std::log(1e12));
          if (std::fabs(need - width) <= 1e-9 * need) break;
          width = need;
        }
      }
      const FpeSolution sol = solve_fpe(D0, F, width, nx, ts, v, {sigma0, step_fraction});
      const MsdCurve var = solution_variance(sol);
      Table t{{"t", "variance", "predicted", "mass", "max_error"}, {ts, var.values, {}, sol.mass, {}}};
      for (std::size_t k = 0; k < ts.size(); ++k) {
        const double pv = sol.sigma0 * sol.sigma0 + 2.0 * integrated_diffusion(D0, F, ts[k], v);
        t.data[2].push_back(pv);
        double worst = 0.0;
        for (std::size_t i = 0; i < sol.x_grid.size(); ++i) {
          const double x = sol.x_grid[i];
          const double g = std::exp(-0.5 * x * x / pv) / std::sqrt(2.0 * std::numbers::pi * pv);
          worst = std::max(worst, std::fabs(g - sol.density[k][i]));
        }
        t.data[4].push_back(worst);
      }
      files.push_back(emit("fpe", commands["fpe"].echo, common, t));
      if (!snapshots.empty()) {
        fs::create_directories(snapshots);
        for (std::size_t k = 0; k < ts.size(); ++k) {
          Table d{{"x", "W"}, {sol.x_grid, sol.density[k]}};
          const std::string name = (fs::path(snapshots) / ("density_" + std::to_string(k) + ".csv")).string();
          files.push_back({name, echo_block("fpe", commands["fpe"].echo) + "#t=" + format_number(ts[k]) + "\n" + d.csv()});
        }
      }
    };
  }

  try {
    // Splice config settings in front of the command-line flags so explicit
    // flags win (TakeLast).
    std::vector<std::string> tokens = args;
    std::string cfg;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i] == "--config" && i + 1 < tokens.size()) cfg = tokens[i + 1];
      if (tokens[i].rfind("--config=", 0) == 0) cfg = tokens[i].substr(9);
    }
    if (!cfg.empty() && !tokens.empty()) {
      std::vector<std::string> injected;
      for (const auto& [k, v] : read_config(cfg)) {
        if (k == "command") {
          if (v != tokens[0]) throw ParameterError("config file is for command '" + v + "', not '" + tokens[0] + "'");
          continue;
        }
        if (k == "config" || k == "output") throw ParameterError("config key '" + k + "' is not allowed in a file");
        injected.push_back("--" + k + "=" + v);
      }
      tokens.insert(tokens.begin() + 1, injected.begin(), injected.end());
    }
    std::vector<const char*> argv{"sfd_lab"};
    for (const auto& t : tokens) argv.push_back(t.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << "sfd_lab: " << e.what() << "\n";
      return kBadInput;
    }
    for (auto& [name, action] : actions) {
      if (!app.got_subcommand(name)) continue;
      if (name != "calibrate" && common.format.empty()) common.format = "csv";
      action();
    }
    commit(files, out);
    return kOk;
  } catch (const AccuracyError& e) {
    err << "sfd_lab: accuracy error: " << e.what() << " (estimate " << format_number(e.estimate()) << ", error bound "
        << format_number(e.error_bound()) << ")\n";
    return kNumerical;
  } catch (const NumericalError& e) {
    err << "sfd_lab: numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const ParameterError& e) {
    err << "sfd_lab: invalid input: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "sfd_lab: error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace sfd::cli
