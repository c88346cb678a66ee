#include "k41/io.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace k41::io {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  os.write(b, 4);
}

void put_f64(std::ostream& os, double v) {
  char b[8];
  std::memcpy(b, &v, 8);
  os.write(b, 8);
}

std::uint32_t get_u32(std::istream& is) {
  char b[4];
  is.read(b, 4);
  std::uint32_t v;
  std::memcpy(&v, b, 4);
  return v;
}

double get_f64(std::istream& is) {
  char b[8];
  is.read(b, 8);
  double v;
  std::memcpy(&v, b, 8);
  return v;
}

}  // namespace

void write_k41f(const std::string& path, const field::SpectralField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_k41f: cannot open " + path);
  os.write("K41F", 4);
  put_u32(os, 1);
  put_u32(os, static_cast<std::uint32_t>(f.N));
  put_f64(os, f.L);
  put_f64(os, f.nu);
  put_f64(os, f.t);
  for (int c = 0; c < 3; ++c) {
    for (const auto& v : f.coeffs[c]) {
      put_f64(os, v.real());
      put_f64(os, v.imag());
    }
  }
  if (!os) throw std::runtime_error("write_k41f: write failed for " + path);
}

field::SpectralField read_k41f(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_k41f: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (std::memcmp(magic, "K41F", 4) != 0)
    throw std::runtime_error("read_k41f: bad magic in " + path);
  std::uint32_t version = get_u32(is);
  if (version != 1) throw std::runtime_error("read_k41f: unsupported version");
  int N = static_cast<int>(get_u32(is));
  double L = get_f64(is);
  double nu = get_f64(is);
  double t = get_f64(is);
  field::SpectralField f = field::make_spectral(N, L, nu, t);
  for (int c = 0; c < 3; ++c) {
    for (auto& v : f.coeffs[c]) {
      double re = get_f64(is);
      double im = get_f64(is);
      v = field::cplx{re, im};
    }
  }
  if (!is) throw std::runtime_error("read_k41f: truncated file " + path);
  return f;
}

void write_physical_csv(const std::string& path, const field::PhysicalField& p) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_physical_csv: cannot open " + path);
  os << "x,y,z,u1,u2,u3\n";
  os << std::setprecision(17);
  const double h = p.L / p.N;
  for (int i = 0; i < p.N; ++i)
    for (int j = 0; j < p.N; ++j)
      for (int k = 0; k < p.N; ++k) {
        std::size_t id = p.idx(i, j, k);
        os << i * h << ',' << j * h << ',' << k * h << ',' << p.values[0][id]
           << ',' << p.values[1][id] << ',' << p.values[2][id] << '\n';
      }
}

void write_spectrum_csv(const std::string& path, const spectrum::ShellSpectrum& s) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_spectrum_csv: cannot open " + path);
  os << "n,K,E_dagger,mu_weight\n" << std::setprecision(17);
  for (const auto& sh : s.shells)
    os << sh.n << ',' << sh.K << ',' << sh.Edag << ',' << sh.mu_weight << '\n';
}

void write_avg_spectrum_csv(const std::string& path,
                            const spectrum::AveragedSpectrum& s) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_avg_spectrum_csv: cannot open " + path);
  os << std::setprecision(17);
  os << "# T0=" << s.T0 << ",T1=" << s.T1 << ",Ebar=" << s.Ebar
     << ",epsbar=" << s.epsbar << '\n';
  os << "n,K,E_dagger,mu_weight\n";
  for (const auto& sh : s.shells)
    os << sh.n << ',' << sh.K << ',' << sh.Edag << ',' << sh.mu_weight << '\n';
}

void write_history(const std::string& dir, const evolve::FlowHistory& h) {
  fs::create_directories(dir);
  std::ofstream idx(fs::path(dir) / "index.csv");
  if (!idx) throw std::runtime_error("write_history: cannot open index in " + dir);
  idx << "i,t,file,energy,dissipation\n" << std::setprecision(17);
  for (std::size_t i = 0; i < h.samples.size(); ++i) {
    std::ostringstream name;
    name << "snap_" << std::setw(5) << std::setfill('0') << i << ".k41f";
    write_k41f((fs::path(dir) / name.str()).string(), h.samples[i]);
    idx << i << ',' << h.times[i] << ',' << name.str() << ','
        << field::energy(h.samples[i]) << ',' << field::dissipation(h.samples[i])
        << '\n';
  }
}

evolve::FlowHistory read_history(const std::string& dir) {
  std::ifstream idx(fs::path(dir) / "index.csv");
  if (!idx) throw std::runtime_error("read_history: no index.csv in " + dir);
  std::string line;
  std::getline(idx, line);  // header
  evolve::FlowHistory h;
  while (std::getline(idx, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    std::getline(ss, tok, ',');  // i
    std::getline(ss, tok, ',');
    double t = std::stod(tok);
    std::getline(ss, tok, ',');
    std::string file = tok;
    h.times.push_back(t);
    h.samples.push_back(read_k41f((fs::path(dir) / file).string()));
  }
  if (h.samples.empty()) throw std::runtime_error("read_history: empty history");
  return h;
}

std::string report_to_json(const analysis::K41Report& r) {
  ordered_json j;
  j["vol"] = r.vol;
  j["k_minus"] = r.k_minus;
  j["k_plus"] = r.k_plus;
  j["reynolds"] = r.reynolds;
  j["gamma"] = r.gamma;
  j["alpha"] = r.alpha;
  j["k_d"] = r.k_d;
  j["k_c"] = r.k_c;
  j["r_lambda"] = r.r_lambda;
  j["transfer_time"] = r.transfer_time;
  j["E0"] = r.E0;
  j["E1"] = r.E1;
  j["Ebar"] = r.Ebar;
  j["epsbar"] = r.epsbar;
  j["c_n_minus"] = r.c_n_minus;
  j["is_k41"] = r.is_k41;
  j["k41_C"] = r.k41_C;
  j["verdicts"] = ordered_json::array();
  for (const auto& v : r.verdicts) {
    ordered_json vj;
    vj["id"] = v.id;
    vj["lhs"] = v.lhs;
    vj["rhs"] = v.rhs;
    vj["pass"] = v.pass;
    vj["slack"] = v.slack;
    j["verdicts"].push_back(vj);
  }
  return j.dump(2) + "\n";
}

analysis::K41Report report_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  analysis::K41Report r;
  r.vol = j.at("vol");
  r.k_minus = j.at("k_minus");
  r.k_plus = j.at("k_plus");
  r.reynolds = j.at("reynolds");
  r.gamma = j.at("gamma");
  r.alpha = j.at("alpha");
  r.k_d = j.at("k_d");
  r.k_c = j.at("k_c");
  r.r_lambda = j.at("r_lambda");
  r.transfer_time = j.at("transfer_time");
  r.E0 = j.at("E0");
  r.E1 = j.at("E1");
  r.Ebar = j.at("Ebar");
  r.epsbar = j.at("epsbar");
  r.c_n_minus = j.at("c_n_minus");
  r.is_k41 = j.at("is_k41");
  r.k41_C = j.at("k41_C");
  for (const auto& vj : j.at("verdicts")) {
    analysis::Verdict v;
    v.id = vj.at("id");
    v.lhs = vj.at("lhs");
    v.rhs = vj.at("rhs");
    v.pass = vj.at("pass");
    v.slack = vj.at("slack");
    r.verdicts.push_back(std::move(v));
  }
  return r;
}

}  // namespace k41::io
