#include "stockflow/scenario_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <variant>
#include <vector>

#include "stockflow/compensator.hpp"
#include "stockflow/errors.hpp"

namespace stockflow {

namespace {

// ---------------------------------------------------------------------------
// Minimal TOML-subset reader: [section], [[list-section]], key = value with
// integers, floats, booleans, quoted strings, and (nested) arrays.
// ---------------------------------------------------------------------------

struct Value;
using Array = std::vector<Value>;

struct Value {
  std::variant<std::int64_t, double, bool, std::string, Array> data;
  int line = 0;
  int column = 0;
};

struct Table {
  std::map<std::string, Value> entries;
  int line = 0;
};

struct Document {
  std::map<std::string, Table> tables;            // [section]
  std::map<std::string, std::vector<Table>> lists;  // [[section]]
};

[[noreturn]] void fail(int line, int column, const std::string& msg) {
  throw ConfigError("scenario:" + std::to_string(line) + ":" +
                    std::to_string(column) + ": " + msg);
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Document parse() {
    Document doc;
    Table* current = nullptr;
    std::string line;
    while (next_line(line)) {
      std::size_t pos = skip_ws(line, 0);
      if (pos >= line.size() || line[pos] == '#') continue;
      if (line[pos] == '[') {
        const bool is_list = pos + 1 < line.size() && line[pos + 1] == '[';
        const std::size_t name_start = pos + (is_list ? 2 : 1);
        const std::string closer = is_list ? "]]" : "]";
        const std::size_t close = line.find(closer, name_start);
        if (close == std::string::npos) {
          fail(line_no_, int(pos) + 1, "unterminated section header");
        }
        std::string name = trim(line.substr(name_start, close - name_start));
        if (name.empty()) fail(line_no_, int(pos) + 1, "empty section name");
        if (is_list) {
          doc.lists[name].push_back(Table{{}, line_no_});
          current = &doc.lists[name].back();
        } else {
          if (doc.tables.count(name)) {
            fail(line_no_, int(pos) + 1, "duplicate section [" + name + "]");
          }
          doc.tables[name] = Table{{}, line_no_};
          current = &doc.tables[name];
        }
        if (skip_ws(line, close + closer.size()) < line.size() &&
            line[skip_ws(line, close + closer.size())] != '#') {
          fail(line_no_, int(close) + 1, "trailing text after section header");
        }
        continue;
      }
      // key = value
      const std::size_t eq = line.find('=', pos);
      if (eq == std::string::npos) {
        fail(line_no_, int(pos) + 1, "expected key = value");
      }
      std::string key = trim(line.substr(pos, eq - pos));
      if (key.empty()) fail(line_no_, int(pos) + 1, "empty key");
      if (current == nullptr) {
        fail(line_no_, int(pos) + 1, "key \"" + key + "\" outside a section");
      }
      std::size_t vpos = skip_ws(line, eq + 1);
      Value v = parse_value(line, vpos);
      vpos = skip_ws(line, vpos);
      if (vpos < line.size() && line[vpos] != '#') {
        fail(line_no_, int(vpos) + 1, "trailing text after value");
      }
      if (current->entries.count(key)) {
        fail(line_no_, int(pos) + 1, "duplicate key \"" + key + "\"");
      }
      current->entries[key] = std::move(v);
    }
    return doc;
  }

 private:
  bool next_line(std::string& line) {
    if (offset_ >= text_.size()) return false;
    const std::size_t end = text_.find('\n', offset_);
    if (end == std::string::npos) {
      line = text_.substr(offset_);
      offset_ = text_.size();
    } else {
      line = text_.substr(offset_, end - offset_);
      offset_ = end + 1;
    }
    ++line_no_;
    return true;
  }

  static std::size_t skip_ws(const std::string& s, std::size_t pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    return pos;
  }

  static std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }

  Value parse_value(const std::string& line, std::size_t& pos) {
    if (pos >= line.size()) fail(line_no_, int(pos) + 1, "missing value");
    Value v;
    v.line = line_no_;
    v.column = static_cast<int>(pos) + 1;
    const char c = line[pos];
    if (c == '"') {
      const std::size_t close = line.find('"', pos + 1);
      if (close == std::string::npos) {
        fail(line_no_, int(pos) + 1, "unterminated string");
      }
      v.data = line.substr(pos + 1, close - pos - 1);
      pos = close + 1;
      return v;
    }
    if (c == '[') {
      Array arr;
      ++pos;
      pos = skip_ws(line, pos);
      if (pos < line.size() && line[pos] == ']') {
        ++pos;
        v.data = std::move(arr);
        return v;
      }
      while (true) {
        pos = skip_ws(line, pos);
        arr.push_back(parse_value(line, pos));
        pos = skip_ws(line, pos);
        if (pos < line.size() && line[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < line.size() && line[pos] == ']') {
          ++pos;
          break;
        }
        fail(line_no_, int(pos) + 1, "expected ',' or ']' in array");
      }
      v.data = std::move(arr);
      return v;
    }
    // bare token: bool or number
    std::size_t end = pos;
    while (end < line.size() && line[end] != ',' && line[end] != ']' &&
           line[end] != '#' && line[end] != ' ' && line[end] != '\t') {
      ++end;
    }
    const std::string tok = line.substr(pos, end - pos);
    pos = end;
    if (tok == "true") {
      v.data = true;
      return v;
    }
    if (tok == "false") {
      v.data = false;
      return v;
    }
    if (tok.find_first_of(".eE") == std::string::npos ||
        (tok.size() > 1 && (tok[0] == '0' && tok[1] == 'x'))) {
      std::int64_t iv = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
      if (ec == std::errc{} && p == tok.data() + tok.size()) {
        v.data = iv;
        return v;
      }
    }
    try {
      std::size_t used = 0;
      const double dv = std::stod(tok, &used);
      if (used == tok.size()) {
        v.data = dv;
        return v;
      }
    } catch (const std::exception&) {
    }
    fail(line_no_, v.column, "cannot parse value \"" + tok + "\"");
  }

  const std::string& text_;
  std::size_t offset_ = 0;
  int line_no_ = 0;
};

// ---------------------------------------------------------------------------
// Typed access with unknown-key detection
// ---------------------------------------------------------------------------

class TableView {
 public:
  TableView(const Table& table, std::string name)
      : table_(table), name_(std::move(name)) {}

  ~TableView() = default;

  bool has(const std::string& key) const {
    return table_.entries.count(key) != 0;
  }

  const Value& get(const std::string& key) {
    used_.insert(key);
    auto it = table_.entries.find(key);
    if (it == table_.entries.end()) {
      throw ConfigError("scenario: [" + name_ + "] missing key \"" + key +
                        "\"");
    }
    return it->second;
  }

  std::optional<Value> find(const std::string& key) {
    used_.insert(key);
    auto it = table_.entries.find(key);
    if (it == table_.entries.end()) return std::nullopt;
    return it->second;
  }

  void check_no_unknown() const {
    for (const auto& [key, value] : table_.entries) {
      if (!used_.count(key)) {
        fail(value.line, value.column,
             "unknown key \"" + key + "\" in [" + name_ + "]");
      }
    }
  }

 private:
  const Table& table_;
  std::string name_;
  std::set<std::string> used_;
};

std::int64_t as_int(const Value& v, const std::string& what) {
  if (const auto* i = std::get_if<std::int64_t>(&v.data)) return *i;
  fail(v.line, v.column, what + " must be an integer");
}

double as_double(const Value& v, const std::string& what) {
  if (const auto* d = std::get_if<double>(&v.data)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v.data)) {
    return static_cast<double>(*i);
  }
  fail(v.line, v.column, what + " must be a number");
}

bool as_bool(const Value& v, const std::string& what) {
  if (const auto* b = std::get_if<bool>(&v.data)) return *b;
  fail(v.line, v.column, what + " must be true/false");
}

std::string as_string(const Value& v, const std::string& what) {
  if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
  fail(v.line, v.column, what + " must be a quoted string");
}

const Array& as_array(const Value& v, const std::string& what) {
  if (const auto* a = std::get_if<Array>(&v.data)) return *a;
  fail(v.line, v.column, what + " must be an array");
}

std::vector<double> as_double_vector(const Value& v, const std::string& what) {
  std::vector<double> out;
  for (const Value& e : as_array(v, what)) out.push_back(as_double(e, what));
  return out;
}

std::vector<int> as_int_vector(const Value& v, const std::string& what) {
  std::vector<int> out;
  for (const Value& e : as_array(v, what)) {
    out.push_back(static_cast<int>(as_int(e, what)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scenario assembly
// ---------------------------------------------------------------------------

NetworkTopology parse_topology(const Table& table) {
  TableView view(table, "topology");
  NetworkTopology topo;
  if (view.has("cyclic")) {
    topo = build_cyclic(
        static_cast<int>(as_int(view.get("cyclic"), "cyclic")));
  } else {
    const int n =
        static_cast<int>(as_int(view.get("n_processes"), "n_processes"));
    std::vector<Route> routes;
    const Value& rv = view.get("routes");
    for (const Value& pair : as_array(rv, "routes")) {
      const auto ends = as_int_vector(pair, "route");
      if (ends.size() != 2) {
        fail(pair.line, pair.column, "route must be [source, destination]");
      }
      routes.push_back({ends[0], ends[1]});
    }
    topo = make_topology(n, std::move(routes));
  }
  view.check_no_unknown();
  return topo;
}

ControllerSpec parse_controller_spec(TableView& view,
                                     const ControllerSpec& defaults) {
  ControllerSpec spec = defaults;
  if (auto v = view.find("gain")) spec.gain = as_double(*v, "gain");
  if (auto v = view.find("normalizer")) {
    spec.normalizer = normalizer_from_name(as_string(*v, "normalizer"));
  }
  if (auto v = view.find("delta")) spec.delta = as_double(*v, "delta");
  if (auto v = view.find("theta_m")) spec.theta_m = as_double(*v, "theta_m");
  return spec;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  const Document doc = Parser(text).parse();
  for (const auto& [name, table] : doc.tables) {
    if (name != "topology" && name != "plant" && name != "controller" &&
        name != "compensator" && name != "exogenous" && name != "run") {
      fail(table.line, 1, "unknown section [" + name + "]");
    }
  }
  for (const auto& [name, list] : doc.lists) {
    if (name != "disturbances" && name != "route_controller") {
      fail(list.front().line, 1, "unknown section [[" + name + "]]");
    }
  }

  Scenario s;
  auto it = doc.tables.find("topology");
  if (it == doc.tables.end()) {
    throw ConfigError("scenario: missing [topology] section");
  }
  s.topology = parse_topology(it->second);
  const int n = s.topology.n_processes;
  const int m = s.topology.route_count();

  // [plant]
  it = doc.tables.find("plant");
  if (it == doc.tables.end()) {
    throw ConfigError("scenario: missing [plant] section");
  }
  {
    TableView view(it->second, "plant");
    const double h = as_double(view.get("h"), "h");
    s.params.assign(n, ProcessParams{h, 0});
    if (auto v = view.find("delay")) {
      if (std::holds_alternative<Array>(v->data)) {
        const auto delays = as_int_vector(*v, "delay");
        if (static_cast<int>(delays.size()) != n) {
          fail(v->line, v->column, "delay array must have one entry per process");
        }
        for (int i = 0; i < n; ++i) s.params[i].delay = delays[i];
      } else {
        const int d = static_cast<int>(as_int(*v, "delay"));
        for (auto& p : s.params) p.delay = d;
      }
    }
    if (auto v = view.find("delay_range")) {
      const auto range = as_int_vector(*v, "delay_range");
      if (range.size() != 2) {
        fail(v->line, v->column, "delay_range must be [lo, hi]");
      }
      s.delay_range = {range[0], range[1]};
    }
    if (auto v = view.find("delay_seed")) {
      s.delay_seed = static_cast<std::uint64_t>(as_int(*v, "delay_seed"));
    }
    if (auto v = view.find("clamp_negative")) {
      s.clamp_negative = as_bool(*v, "clamp_negative");
    }
    view.check_no_unknown();
  }

  // [controller] (+ per-route overrides)
  it = doc.tables.find("controller");
  if (it == doc.tables.end()) {
    throw ConfigError("scenario: missing [controller] section");
  }
  {
    TableView view(it->second, "controller");
    ControllerSpec defaults;
    defaults = parse_controller_spec(view, defaults);
    view.check_no_unknown();
    s.controllers.assign(m, defaults);
  }
  if (auto lit = doc.lists.find("route_controller"); lit != doc.lists.end()) {
    for (const Table& table : lit->second) {
      TableView view(table, "route_controller");
      const int route = static_cast<int>(as_int(view.get("route"), "route"));
      if (route < 1 || route > m) {
        throw ConfigError("scenario: route_controller index out of range");
      }
      s.controllers[route - 1] =
          parse_controller_spec(view, s.controllers[route - 1]);
      view.check_no_unknown();
    }
  }

  // [compensator]
  if (auto cit = doc.tables.find("compensator"); cit != doc.tables.end()) {
    TableView view(cit->second, "compensator");
    if (auto v = view.find("enabled")) {
      s.compensator_enabled = as_bool(*v, "enabled");
    }
    if (auto v = view.find("nominal_delay")) {
      if (std::holds_alternative<std::string>(v->data)) {
        if (as_string(*v, "nominal_delay") != "max") {
          fail(v->line, v->column, "nominal_delay must be an integer or \"max\"");
        }
        s.nominal_delay_is_max = true;
      } else {
        s.nominal_delay = static_cast<int>(as_int(*v, "nominal_delay"));
      }
    }
    view.check_no_unknown();
  }

  // [exogenous]
  if (auto eit = doc.tables.find("exogenous"); eit != doc.tables.end()) {
    TableView view(eit->second, "exogenous");
    if (view.has("inflow_rate")) {
      ExogenousFlow f;
      f.rate = as_double(view.get("inflow_rate"), "inflow_rate");
      f.process =
          static_cast<int>(as_int(view.get("inflow_process"), "inflow_process"));
      f.buffer = buffer_from_name(
          as_string(view.get("inflow_buffer"), "inflow_buffer"));
      s.inflows.push_back(f);
    }
    if (view.has("outflow_rate")) {
      ExogenousFlow f;
      f.rate = as_double(view.get("outflow_rate"), "outflow_rate");
      f.process = static_cast<int>(
          as_int(view.get("outflow_process"), "outflow_process"));
      f.buffer = buffer_from_name(
          as_string(view.get("outflow_buffer"), "outflow_buffer"));
      s.outflows.push_back(f);
    }
    view.check_no_unknown();
  }

  // [[disturbances]]
  if (auto dit = doc.lists.find("disturbances"); dit != doc.lists.end()) {
    for (const Table& table : dit->second) {
      TableView view(table, "disturbances");
      Disturbance d;
      d.time = static_cast<int>(as_int(view.get("time"), "time"));
      d.process = static_cast<int>(as_int(view.get("process"), "process"));
      d.buffer = buffer_from_name(as_string(view.get("buffer"), "buffer"));
      d.amount = as_double(view.get("amount"), "amount");
      d.sign = static_cast<int>(as_int(view.get("sign"), "sign"));
      view.check_no_unknown();
      s.disturbances.push_back(d);
    }
  }

  // [run]
  it = doc.tables.find("run");
  if (it == doc.tables.end()) {
    throw ConfigError("scenario: missing [run] section");
  }
  {
    TableView view(it->second, "run");
    if (auto v = view.find("name")) s.name = as_string(*v, "name");
    s.horizon = static_cast<int>(as_int(view.get("horizon"), "horizon"));
    const auto in = as_double_vector(view.get("initial_input"), "initial_input");
    const auto out =
        as_double_vector(view.get("initial_output"), "initial_output");
    if (static_cast<int>(in.size()) != n || static_cast<int>(out.size()) != n) {
      throw ConfigError(
          "scenario: initial stock arrays must have one entry per process");
    }
    s.initial.resize(2 * n);
    for (int i = 0; i < n; ++i) {
      s.initial(2 * i) = in[i];
      s.initial(2 * i + 1) = out[i];
    }
    if (auto v = view.find("seed")) {
      s.seed = static_cast<std::uint64_t>(as_int(*v, "seed"));
    }
    if (auto v = view.find("replicates")) {
      s.replicates = static_cast<int>(as_int(*v, "replicates"));
    }
    view.check_no_unknown();
  }

  validate(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "[topology]\n";
  // emit the explicit route list; cyclic shorthand is input sugar only
  os << "n_processes = " << s.topology.n_processes << "\n";
  os << "routes = [";
  for (std::size_t i = 0; i < s.topology.routes.size(); ++i) {
    if (i) os << ", ";
    os << "[" << s.topology.routes[i].source << ", "
       << s.topology.routes[i].destination << "]";
  }
  os << "]\n\n";

  os << "[plant]\n";
  os << "h = " << fmt(s.params[0].h) << "\n";
  os << "delay = [";
  for (std::size_t i = 0; i < s.params.size(); ++i) {
    if (i) os << ", ";
    os << s.params[i].delay;
  }
  os << "]\n";
  if (s.delay_range) {
    os << "delay_range = [" << s.delay_range->first << ", "
       << s.delay_range->second << "]\n";
    os << "delay_seed = " << s.delay_seed << "\n";
  }
  if (s.clamp_negative) os << "clamp_negative = true\n";
  os << "\n[controller]\n";
  const ControllerSpec& c0 = s.controllers[0];
  os << "gain = " << fmt(c0.gain) << "\n";
  os << "normalizer = \"" << normalizer_name(c0.normalizer) << "\"\n";
  os << "delta = " << fmt(c0.delta) << "\n";
  if (c0.normalizer == NormalizerKind::kSaturationDeadZone) {
    os << "theta_m = " << fmt(c0.theta_m) << "\n";
  }
  for (std::size_t k = 0; k < s.controllers.size(); ++k) {
    const ControllerSpec& ck = s.controllers[k];
    if (ck.gain == c0.gain && ck.normalizer == c0.normalizer &&
        ck.delta == c0.delta && ck.theta_m == c0.theta_m) {
      continue;
    }
    os << "\n[[route_controller]]\n";
    os << "route = " << k + 1 << "\n";
    os << "gain = " << fmt(ck.gain) << "\n";
    os << "normalizer = \"" << normalizer_name(ck.normalizer) << "\"\n";
    os << "delta = " << fmt(ck.delta) << "\n";
    if (ck.normalizer == NormalizerKind::kSaturationDeadZone) {
      os << "theta_m = " << fmt(ck.theta_m) << "\n";
    }
  }

  if (s.compensator_enabled) {
    os << "\n[compensator]\n";
    os << "enabled = true\n";
    if (s.nominal_delay_is_max) {
      os << "nominal_delay = \"max\"\n";
    } else {
      os << "nominal_delay = " << s.nominal_delay << "\n";
    }
  }

  if (!s.inflows.empty() || !s.outflows.empty()) {
    os << "\n[exogenous]\n";
    if (!s.inflows.empty()) {
      os << "inflow_process = " << s.inflows[0].process << "\n";
      os << "inflow_buffer = \"" << buffer_name(s.inflows[0].buffer) << "\"\n";
      os << "inflow_rate = " << fmt(s.inflows[0].rate) << "\n";
    }
    if (!s.outflows.empty()) {
      os << "outflow_process = " << s.outflows[0].process << "\n";
      os << "outflow_buffer = \"" << buffer_name(s.outflows[0].buffer)
         << "\"\n";
      os << "outflow_rate = " << fmt(s.outflows[0].rate) << "\n";
    }
  }

  for (const Disturbance& d : s.disturbances) {
    os << "\n[[disturbances]]\n";
    os << "time = " << d.time << "\n";
    os << "process = " << d.process << "\n";
    os << "buffer = \"" << buffer_name(d.buffer) << "\"\n";
    os << "amount = " << fmt(d.amount) << "\n";
    os << "sign = " << d.sign << "\n";
  }

  os << "\n[run]\n";
  if (!s.name.empty()) os << "name = \"" << s.name << "\"\n";
  os << "horizon = " << s.horizon << "\n";
  os << "initial_input = [";
  for (int i = 0; i < s.topology.n_processes; ++i) {
    if (i) os << ", ";
    os << fmt(s.initial(2 * i));
  }
  os << "]\n";
  os << "initial_output = [";
  for (int i = 0; i < s.topology.n_processes; ++i) {
    if (i) os << ", ";
    os << fmt(s.initial(2 * i + 1));
  }
  os << "]\n";
  os << "seed = " << s.seed << "\n";
  os << "replicates = " << s.replicates << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Trace CSV
// ---------------------------------------------------------------------------

void write_trace_csv(std::ostream& os, const Trace& trace, int n_processes) {
  const int n = n_processes;
  const int m = trace.u_a.empty() ? 0 : static_cast<int>(trace.u_a[0].size());
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",x_in_" << i << ",x_out_" << i;
  for (int k = 1; k <= m; ++k) os << ",y_c_" << k;
  for (int k = 1; k <= m; ++k) os << ",u_c_" << k;
  for (int k = 1; k <= m; ++k) os << ",u_a_" << k;
  os << ",V,drift,consensus_error\n";
  os.precision(12);
  const int ticks = trace.ticks();
  for (std::size_t t = 0; t < trace.x.size(); ++t) {
    os << t;
    for (int j = 0; j < 2 * n; ++j) os << "," << trace.x[t](j);
    const bool has_signals = static_cast<int>(t) < ticks;
    for (int k = 0; k < m; ++k) {
      os << ",";
      if (has_signals) os << trace.y_c[t](k);
    }
    for (int k = 0; k < m; ++k) {
      os << ",";
      if (has_signals) os << trace.u_c[t](k);
    }
    for (int k = 0; k < m; ++k) {
      os << ",";
      if (has_signals) os << trace.u_a[t](k);
    }
    os << ",";
    if (has_signals) os << trace.storage[t];
    os << ",";
    if (has_signals && !trace.drift.empty()) os << trace.drift[t];
    os << "," << trace.consensus_error[t] << "\n";
  }
}

std::string trace_to_csv(const Trace& trace, int n_processes) {
  std::ostringstream os;
  write_trace_csv(os, trace, n_processes);
  return os.str();
}

Trace read_trace_csv(std::istream& is, int n_processes, int n_routes) {
  Trace trace;
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("trace csv: empty input");
  const int n = n_processes;
  const int m = n_routes;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    const std::size_t expected = 1 + 2 * n + 3 * m + 3;
    if (cells.size() != expected) {
      throw ConfigError("trace csv: expected " + std::to_string(expected) +
                        " columns, got " + std::to_string(cells.size()));
    }
    std::size_t c = 1;
    Eigen::VectorXd x(2 * n);
    for (int j = 0; j < 2 * n; ++j) x(j) = std::stod(cells[c++]);
    trace.x.push_back(x);
    const bool has_signals = !cells[c].empty();
    if (has_signals) {
      Eigen::VectorXd y_c(m), u_c(m), u_a(m);
      for (int k = 0; k < m; ++k) y_c(k) = std::stod(cells[c++]);
      for (int k = 0; k < m; ++k) u_c(k) = std::stod(cells[c++]);
      for (int k = 0; k < m; ++k) u_a(k) = std::stod(cells[c++]);
      trace.y_c.push_back(y_c);
      trace.u_c.push_back(u_c);
      trace.u_a.push_back(u_a);
      trace.storage.push_back(std::stod(cells[c++]));
      if (!cells[c].empty()) trace.drift.push_back(std::stod(cells[c]));
      ++c;
    } else {
      c += 3 * m + 2;
    }
    trace.consensus_error.push_back(std::stod(cells[c]));
  }
  return trace;
}

}  // namespace stockflow
