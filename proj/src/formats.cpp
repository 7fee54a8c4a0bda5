#include "condtrack/formats.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace condtrack {

using nlohmann::json;

namespace {

json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

}  // namespace

json system_to_json(const HomogeneousSystem& f) {
  json eqs = json::array();
  for (int i = 0; i < f.num_equations(); ++i) {
    json eq = json::array();
    for (const Monomial& m : f.equation(i)) {
      eq.push_back(json{{"exponents", m.exponents},
                        {"coeff_re", m.coeff.real()},
                        {"coeff_im", m.coeff.imag()}});
    }
    eqs.push_back(std::move(eq));
  }
  return json{{"n", f.num_equations()},
              {"degrees", f.degrees()},
              {"equations", std::move(eqs)}};
}

HomogeneousSystem system_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    const std::vector<int> degrees = j.at("degrees").get<std::vector<int>>();
    if (static_cast<int>(degrees.size()) != n)
      throw ParseError("system: n does not match degrees length");
    const json& eqs = j.at("equations");
    if (!eqs.is_array() || static_cast<int>(eqs.size()) != n)
      throw ParseError("system: expected n equation arrays");
    std::vector<std::vector<Monomial>> equations(n);
    for (int i = 0; i < n; ++i) {
      for (const json& jm : eqs[i]) {
        Monomial m;
        m.exponents = jm.at("exponents").get<std::vector<int>>();
        m.coeff = Complex(jm.at("coeff_re").get<double>(),
                          jm.at("coeff_im").get<double>());
        equations[i].push_back(std::move(m));
      }
    }
    return HomogeneousSystem(degrees, std::move(equations));
  } catch (const json::exception& e) {
    throw ParseError(std::string("system: malformed JSON: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(std::string("system: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << contents;
}

HomogeneousSystem load_system(const std::string& path) {
  try {
    return system_from_json(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_system(const std::string& path, const HomogeneousSystem& f) {
  write_file(path, system_to_json(f).dump(2) + "\n");
}

json start_pair_to_json(const StartPair& pair) {
  json zeros = json::array();
  for (const ProjectivePoint& z : pair.zeros) {
    json coords = json::array();
    for (Eigen::Index i = 0; i < z.dim(); ++i)
      coords.push_back(json::array({z.coords()[i].real(), z.coords()[i].imag()}));
    zeros.push_back(std::move(coords));
  }
  return json{{"system", system_to_json(pair.system)},
              {"zeros", std::move(zeros)}};
}

StartPair start_pair_from_json(const json& j) {
  try {
    HomogeneousSystem system = system_from_json(j.at("system"));
    std::vector<ProjectivePoint> zeros;
    for (const json& jz : j.at("zeros")) {
      CVec z(jz.size());
      for (size_t i = 0; i < jz.size(); ++i)
        z[static_cast<Eigen::Index>(i)] =
            Complex(jz[i].at(0).get<double>(), jz[i].at(1).get<double>());
      zeros.push_back(ProjectivePoint(z));
    }
    if (zeros.empty()) throw ParseError("start pair: no zeros listed");
    return StartPair{std::move(system), std::move(zeros)};
  } catch (const json::exception& e) {
    throw ParseError(std::string("start pair: malformed JSON: ") + e.what());
  }
}

StartPair load_start_pair(const std::string& path) {
  try {
    return start_pair_from_json(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_start_pair(const std::string& path, const StartPair& pair) {
  write_file(path, start_pair_to_json(pair).dump(2) + "\n");
}

json certificate_to_json(const AlphaCertificate& cert) {
  return json{{"alpha_bound", number_or_string(cert.alpha_bound)},
              {"certified", cert.certified},
              {"threshold", cert.threshold_used},
              {"zero_radius_tan", number_or_string(cert.zero_radius_tan)}};
}

json tracking_result_to_json(const TrackingResult& result) {
  json steps = json::array();
  json subdivision = json::array();
  for (const StepRecord& r : result.steps) {
    subdivision.push_back(r.t);
    json x_re = json::array(), x_im = json::array();
    for (Eigen::Index i = 0; i < r.x.dim(); ++i) {
      x_re.push_back(r.x.coords()[i].real());
      x_im.push_back(r.x.coords()[i].imag());
    }
    steps.push_back(json{{"t", r.t},
                         {"mu", number_or_string(r.mu)},
                         {"beta0", r.beta0},
                         {"alpha_bound", r.alpha_bound},
                         {"trigger", to_string(r.trigger)},
                         {"arc_increment", r.arc_increment},
                         {"phi_at_step", r.phi_at_step},
                         {"x_re", std::move(x_re)},
                         {"x_im", std::move(x_im)}});
  }
  return json{{"k", result.k},
              {"condition_length_estimate", result.condition_length_estimate},
              {"step_bound", result.step_bound},
              {"final_certificate", certificate_to_json(result.final_certificate)},
              {"subdivision", std::move(subdivision)},
              {"steps", std::move(steps)}};
}

CVec parse_complex_list(const std::string& text) {
  std::vector<Complex> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // Trim whitespace.
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ParseError("empty component");
    item = item.substr(first, last - first + 1);
    double re = 0.0, im = 0.0;
    if (!item.empty() && item.back() == 'i') {
      std::string body = item.substr(0, item.size() - 1);
      // Split at the sign that separates the real and imaginary parts, if
      // any (skipping a leading sign and exponent signs).
      size_t split = std::string::npos;
      for (size_t p = 1; p < body.size(); ++p) {
        if ((body[p] == '+' || body[p] == '-') &&
            body[p - 1] != 'e' && body[p - 1] != 'E')
          split = p;
      }
      try {
        if (split == std::string::npos) {
          if (body.empty() || body == "+")
            im = 1.0;
          else if (body == "-")
            im = -1.0;
          else
            im = std::stod(body);
        } else {
          re = std::stod(body.substr(0, split));
          const std::string imag_part = body.substr(split);
          if (imag_part == "+")
            im = 1.0;
          else if (imag_part == "-")
            im = -1.0;
          else
            im = std::stod(imag_part);
        }
      } catch (const std::exception&) {
        throw ParseError("bad complex component: " + item);
      }
    } else {
      try {
        re = std::stod(item);
      } catch (const std::exception&) {
        throw ParseError("bad numeric component: " + item);
      }
    }
    values.emplace_back(re, im);
  }
  if (values.size() < 2) throw ParseError("point needs at least 2 components");
  CVec out(static_cast<Eigen::Index>(values.size()));
  for (size_t i = 0; i < values.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = values[i];
  return out;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << hash;
  return os.str();
}

}  // namespace condtrack
