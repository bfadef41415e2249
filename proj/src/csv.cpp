#include "burgers/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace burgers::csv {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::filesystem::path& path) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw IoError("bad numeric field '" + s + "' in " + path.string());
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_fields(const std::filesystem::path& path, const SnapshotSet& set,
                  const VectorXd& nodes, const std::string& name_w,
                  const std::string& name_T) {
  set.validate();
  std::ofstream out = open_out(path);
  out << "t,x," << name_w << ',' << name_T << '\n';
  for (std::size_t j = 0; j < set.size(); ++j) {
    const StateField& st = set.states[j];
    const std::string ts = format_double(set.times[j]);
    for (Eigen::Index i = 0; i < nodes.size(); ++i) {
      out << ts << ',' << format_double(nodes[i]) << ','
          << format_double(st.w[i]) << ',' << format_double(st.T[i]) << '\n';
    }
  }
}

SnapshotSet load_fields(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty file " + path.string());
  const auto header = split(line);
  if (header.size() != 4 || header[0] != "t" || header[1] != "x")
    throw IoError("unexpected header in " + path.string());

  SnapshotSet set;
  std::vector<double> w, T;
  double cur_t = 0.0;
  bool have_row = false;
  auto flush = [&]() {
    if (!have_row) return;
    StateField st;
    st.t = cur_t;
    st.w = Eigen::Map<const VectorXd>(w.data(), long(w.size()));
    st.T = Eigen::Map<const VectorXd>(T.data(), long(T.size()));
    set.states.push_back(std::move(st));
    set.times.push_back(cur_t);
    w.clear();
    T.clear();
  };

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 4) throw IoError("malformed row in " + path.string());
    const double t = parse_double(f[0], path);
    if (!have_row || t != cur_t) {
      flush();
      cur_t = t;
      have_row = true;
    }
    w.push_back(parse_double(f[2], path));
    T.push_back(parse_double(f[3], path));
  }
  flush();
  set.validate();
  set.compute_means();
  return set;
}

void write_eigenvalues(const std::filesystem::path& path,
                       const pod::PodBasis& basis) {
  std::ofstream out = open_out(path);
  out << "i,lambda\n";
  for (int i = 0; i < basis.r; ++i)
    out << (i + 1) << ',' << format_double(basis.eigenvalues[i]) << '\n';
}

void write_modes(const std::filesystem::path& path, const pod::PodBasis& basis,
                 const VectorXd& nodes) {
  std::ofstream out = open_out(path);
  out << "x";
  for (int k = 0; k < basis.r; ++k) out << ",phi_" << (k + 1);
  out << '\n';
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    out << format_double(nodes[i]);
    for (int k = 0; k < basis.r; ++k)
      out << ',' << format_double(basis.modes(i, k));
    out << '\n';
  }
}

void write_coefficients(const std::filesystem::path& path,
                        const rom::RomTrajectory& traj) {
  std::ofstream out = open_out(path);
  const int r = traj.r_w + traj.r_T;
  out << "t";
  for (int k = 0; k < r; ++k) out << ",q_" << (k + 1);
  out << '\n';
  for (std::size_t j = 0; j < traj.size(); ++j) {
    out << format_double(traj.times[j]);
    for (int k = 0; k < r; ++k)
      out << ',' << format_double(traj.states[j][k]);
    out << '\n';
  }
}

void write_history(const std::filesystem::path& path,
                   const std::vector<es::HistoryRow>& history) {
  std::ofstream out = open_out(path);
  out << "k,mu_e,mu_nl,Q\n";
  for (const es::HistoryRow& row : history) {
    out << row.k << ',' << format_double(row.mu[0]) << ',';
    if (row.mu.size() > 1) out << format_double(row.mu[1]);
    out << ',' << format_double(row.Q) << '\n';
  }
}

std::vector<es::HistoryRow> load_history(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty file " + path.string());
  if (split(line) != std::vector<std::string>{"k", "mu_e", "mu_nl", "Q"})
    throw IoError("unexpected header in " + path.string());

  std::vector<es::HistoryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 4) throw IoError("malformed row in " + path.string());
    es::HistoryRow row;
    row.k = std::strtol(f[0].c_str(), nullptr, 10);
    row.mu.push_back(parse_double(f[1], path));
    if (!f[2].empty()) row.mu.push_back(parse_double(f[2], path));
    row.Q = parse_double(f[3], path);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace burgers::csv
