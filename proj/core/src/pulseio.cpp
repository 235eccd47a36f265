#include "rcp/pulseio.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rcp/units.hpp"

namespace rcp {

using nlohmann::json;

std::string pulse_to_json(const XYPulse& p) {
  json j;
  j["name"] = p.name;
  j["T_ns"] = p.T();
  if (p.y.empty()) {
    j["kind"] = "x";
    j["a"] = p.x.a;
    j["phi"] = p.x.phi;
  } else {
    j["kind"] = "xy";
    j["a"] = {p.x.a, p.y.a};
    j["phi"] = {p.x.phi, p.y.phi};
  }
  j["carrier_phase"] = p.carrier_phase;
  j["drag_coeff"] = p.drag_coeff;
  j["anharmonicity_MHz"] = radns_to_mhz(p.anharmonicity);
  return j.dump(2) + "\n";
}

XYPulse pulse_from_json(const std::string& text) {
  json j = json::parse(text);
  XYPulse p;
  p.name = j.value("name", "pulse");
  const double T = j.at("T_ns").get<double>();
  if (T <= 0.0) throw std::invalid_argument("pulse: T_ns must be > 0");
  const std::string kind = j.value("kind", "x");
  auto read_channel = [T](const json& a, const json& phi) {
    FourierPulse f;
    f.T = T;
    f.a = a.get<std::vector<double>>();
    f.phi = phi.get<std::vector<double>>();
    if (f.a.size() != f.phi.size() + 1)
      throw std::invalid_argument("pulse: need N+1 amplitudes and N phases");
    return f;
  };
  if (kind == "x") {
    p.x = read_channel(j.at("a"), j.at("phi"));
  } else if (kind == "xy") {
    p.x = read_channel(j.at("a").at(0), j.at("phi").at(0));
    p.y = read_channel(j.at("a").at(1), j.at("phi").at(1));
  } else {
    throw std::invalid_argument("pulse: unknown kind '" + kind + "'");
  }
  p.carrier_phase = j.value("carrier_phase", 0.0);
  p.drag_coeff = j.value("drag_coeff", 0.0);
  p.anharmonicity = mhz_to_radns(j.value("anharmonicity_MHz", 0.0));
  if (p.drag_coeff != 0.0 && p.anharmonicity == 0.0)
    throw std::invalid_argument("pulse: drag_coeff needs anharmonicity_MHz");
  return p;
}

void save_pulse(const XYPulse& p, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << pulse_to_json(p);
}

XYPulse load_pulse(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return pulse_from_json(ss.str());
}

}  // namespace rcp
