#include "burgers/config.hpp"

#include <fstream>

#include <json.hpp>

namespace burgers::config {

using nlohmann::json;

StateField InitialCondition::build(const GridSpec& grid) const {
  const int n = grid.n_nodes();
  StateField st;
  st.t = 0.0;
  if (kind == Kind::PaperStep) {
    // Unit step on [0, 0.5] for both fields.
    st.w = VectorXd::Zero(n);
    st.T = VectorXd::Zero(n);
    const double h = grid.dx();
    for (int i = 0; i < n; ++i) {
      const double x = i * h;
      if (x <= 0.5) {
        st.w[i] = 1.0;
        st.T[i] = 1.0;
      }
    }
  } else {
    if (int(w.size()) != n || int(T.size()) != n)
      throw ConfigError("initial_condition: custom samples must have " +
                        std::to_string(n) + " nodes");
    st.w = Eigen::Map<const VectorXd>(w.data(), n);
    st.T = Eigen::Map<const VectorXd>(T.data(), n);
  }
  return st;
}

PhysicalParams ExperimentConfig::physical() const {
  PhysicalParams p;
  p.mu = 1.0 / reynolds;
  p.kappa = kappa;
  p.c = heat_diffusion;
  p.w_left = w_left;
  p.w_right = w_right;
  p.T_left = T_left;
  p.T_right = T_right;
  return p;
}

void ExperimentConfig::validate() const {
  if (!(reynolds > 0.0)) throw ConfigError("physical.reynolds must be > 0");
  if (!(heat_diffusion > 0.0)) throw ConfigError("physical.c must be > 0");
  if (grid.n_elements < 2) throw ConfigError("grid.n_elements must be >= 2");
  if (!(t_f > 0.0)) throw ConfigError("time.t_f must be > 0");
  if (snapshot_count < 2) throw ConfigError("time.snapshots must be >= 2");
  if (r_w < 1 || r_T < 1) throw ConfigError("pod.r_w and pod.r_T must be >= 1");
  if (r_w > snapshot_count || r_T > snapshot_count)
    throw ConfigError("pod mode counts cannot exceed the snapshot count");
  closure.validate(r_w);
  es_params.validate();
  const std::size_t channels = closure.has_nonlinear() ? 2 : 1;
  if (es_params.channels() != channels)
    throw ConfigError("es: closure kind '" + closures::to_string(closure.kind) +
                      "' needs " + std::to_string(channels) + " channel(s)");
  cost.validate();
  if (!(rtol > 0.0) || !(atol > 0.0))
    throw ConfigError("integrator tolerances must be > 0");
}

ExperimentConfig preset_test1() {
  ExperimentConfig c;
  c.name = "test1";
  c.grid.n_elements = 100;
  c.reynolds = 1000.0;
  c.kappa = 5e-4;
  c.heat_diffusion = 1e-2;
  c.t_f = 1.0;
  c.snapshot_count = 101;
  c.r_w = c.r_T = 10;
  c.closure.kind = closures::Kind::H;
  c.es_params.a = {3e-4};
  c.es_params.omega = {15.0};
  c.es_params.t_f = c.t_f;
  c.es_params.max_iters = 500;
  c.cost = {1.0, 1.0};
  c.out_dir = "out/test1";
  return c;
}

ExperimentConfig preset_test2() {
  ExperimentConfig c = preset_test1();
  c.name = "test2";
  c.closure.kind = closures::Kind::Combined;
  c.closure.linear_kind = closures::Kind::H;
  c.es_params.a = {6e-6, 6e-6};
  c.es_params.omega = {10.0, 15.0};
  c.es_params.max_iters = 500;
  c.out_dir = "out/test2";
  return c;
}

ExperimentConfig preset(const std::string& name) {
  if (name == "test1") return preset_test1();
  if (name == "test2") return preset_test2();
  throw ConfigError("unknown preset '" + name + "' (expected test1 or test2)");
}

namespace {

json closure_to_json(const closures::ClosureSpec& s) {
  json j;
  j["kind"] = closures::to_string(s.kind);
  if (s.kind == closures::Kind::Combined)
    j["linear_kind"] = closures::to_string(s.linear_kind);
  j["mu_e"] = s.mu_e;
  j["mu_nl"] = s.mu_nl;
  j["m"] = s.m;
  j["alphas"] = s.alphas;
  j["scope"] =
      s.scope == closures::Scope::VelocityOnly ? "velocity" : "both";
  j["scale_boundary"] = s.scale_boundary;
  return j;
}

closures::ClosureSpec closure_from_json(const json& j) {
  closures::ClosureSpec s;
  if (j.contains("kind")) s.kind = closures::kind_from_string(j.at("kind"));
  if (j.contains("linear_kind"))
    s.linear_kind = closures::kind_from_string(j.at("linear_kind"));
  s.mu_e = j.value("mu_e", 0.0);
  s.mu_nl = j.value("mu_nl", 0.0);
  s.m = j.value("m", 0);
  if (j.contains("alphas")) {
    const auto a = j.at("alphas").get<std::vector<double>>();
    if (a.size() != 4) throw ConfigError("closure.alphas must have 4 entries");
    std::copy(a.begin(), a.end(), s.alphas.begin());
  }
  const std::string scope = j.value("scope", "velocity");
  if (scope == "velocity") {
    s.scope = closures::Scope::VelocityOnly;
  } else if (scope == "both") {
    s.scope = closures::Scope::BothFields;
  } else {
    throw ConfigError("closure.scope must be 'velocity' or 'both'");
  }
  s.scale_boundary = j.value("scale_boundary", false);
  return s;
}

}  // namespace

std::string to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["grid"]["n_elements"] = c.grid.n_elements;
  j["physical"]["reynolds"] = c.reynolds;
  j["physical"]["kappa"] = c.kappa;
  j["physical"]["c"] = c.heat_diffusion;
  j["physical"]["bc"] = {{"w_left", c.w_left},
                         {"w_right", c.w_right},
                         {"T_left", c.T_left},
                         {"T_right", c.T_right}};
  j["initial_condition"]["type"] =
      c.initial.kind == InitialCondition::Kind::PaperStep ? "paper_step"
                                                          : "custom";
  if (c.initial.kind == InitialCondition::Kind::Custom) {
    j["initial_condition"]["w"] = c.initial.w;
    j["initial_condition"]["T"] = c.initial.T;
  }
  j["time"]["t_f"] = c.t_f;
  j["time"]["snapshots"] = c.snapshot_count;
  j["pod"]["r_w"] = c.r_w;
  j["pod"]["r_T"] = c.r_T;
  j["closure"] = closure_to_json(c.closure);
  j["es"]["a"] = c.es_params.a;
  j["es"]["omega"] = c.es_params.omega;
  j["es"]["t_f"] = c.es_params.t_f;
  j["es"]["max_iters"] = c.es_params.max_iters;
  j["es"]["clamp"] = c.es_params.clamp;
  j["es"]["literal_dual_phase"] = c.es_params.literal_dual_phase;
  j["cost"]["Q1"] = c.cost.Q1;
  j["cost"]["Q2"] = c.cost.Q2;
  j["integrator"]["rtol"] = c.rtol;
  j["integrator"]["atol"] = c.atol;
  j["output_dir"] = c.out_dir.string();
  j["seed"] = c.seed;
  return j.dump(2);
}

ExperimentConfig from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  ExperimentConfig c;
  try {
    c.name = j.value("name", std::string("custom"));
    if (j.contains("grid"))
      c.grid.n_elements = j["grid"].value("n_elements", c.grid.n_elements);
    if (j.contains("physical")) {
      const json& p = j["physical"];
      if (p.contains("mu") && p.contains("reynolds"))
        throw ConfigError("physical: give mu or reynolds, not both");
      if (p.contains("mu")) {
        const double mu = p.at("mu").get<double>();
        if (!(mu > 0.0)) throw ConfigError("physical.mu must be > 0");
        c.reynolds = 1.0 / mu;
      } else {
        c.reynolds = p.value("reynolds", c.reynolds);
      }
      c.kappa = p.value("kappa", c.kappa);
      c.heat_diffusion = p.value("c", c.heat_diffusion);
      if (p.contains("bc")) {
        const json& b = p["bc"];
        c.w_left = b.value("w_left", 0.0);
        c.w_right = b.value("w_right", 0.0);
        c.T_left = b.value("T_left", 0.0);
        c.T_right = b.value("T_right", 0.0);
      }
    }
    if (j.contains("initial_condition")) {
      const json& ic = j["initial_condition"];
      const std::string type = ic.value("type", "paper_step");
      if (type == "paper_step") {
        c.initial.kind = InitialCondition::Kind::PaperStep;
      } else if (type == "custom") {
        c.initial.kind = InitialCondition::Kind::Custom;
        c.initial.w = ic.at("w").get<std::vector<double>>();
        c.initial.T = ic.at("T").get<std::vector<double>>();
      } else {
        throw ConfigError("initial_condition.type must be paper_step or custom");
      }
    }
    if (j.contains("time")) {
      c.t_f = j["time"].value("t_f", c.t_f);
      c.snapshot_count = j["time"].value("snapshots", c.snapshot_count);
    }
    if (j.contains("pod")) {
      c.r_w = j["pod"].value("r_w", c.r_w);
      c.r_T = j["pod"].value("r_T", c.r_T);
    }
    if (j.contains("closure")) c.closure = closure_from_json(j["closure"]);
    if (j.contains("es")) {
      const json& e = j["es"];
      if (e.contains("a")) c.es_params.a = e.at("a").get<std::vector<double>>();
      if (e.contains("omega"))
        c.es_params.omega = e.at("omega").get<std::vector<double>>();
      c.es_params.t_f = e.value("t_f", c.t_f);
      c.es_params.max_iters = e.value("max_iters", c.es_params.max_iters);
      c.es_params.clamp = e.value("clamp", true);
      c.es_params.literal_dual_phase = e.value("literal_dual_phase", false);
    } else {
      c.es_params.t_f = c.t_f;
    }
    if (j.contains("cost")) {
      c.cost.Q1 = j["cost"].value("Q1", 1.0);
      c.cost.Q2 = j["cost"].value("Q2", 1.0);
    }
    if (j.contains("integrator")) {
      c.rtol = j["integrator"].value("rtol", c.rtol);
      c.atol = j["integrator"].value("atol", c.atol);
    }
    if (j.contains("output_dir"))
      c.out_dir = j.at("output_dir").get<std::string>();
    c.seed = j.value("seed", 0ul);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

ExperimentConfig load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json(text);
}

void save(const ExperimentConfig& cfg, const std::filesystem::path& path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file " + path.string());
  out << to_json(cfg) << '\n';
}

}  // namespace burgers::config
