// apsspin: command-line front end for the algebra, dynamics and spin modules.
//
//   apsspin <scenario> [--flags] [--config file.ini] [--output path] [--format csv|json]
//
// Flags override values from the config file. Errors are printed as JSON
// {module, kind, message} on stderr with a nonzero exit status.

#include <aps/aps.hpp>
#include <aps/io.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

namespace {

using aps::io::json;

struct Common {
  std::string output;
  std::string format = "json";
  std::string constants_file;
};

void emit(const Common &common, const std::string &text) {
  if (common.output.empty() || common.output == "-")
    std::cout << text;
  else
    aps::io::write_text(common.output, text);
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

json warnings_json(const std::vector<std::string> &w) {
  json a = json::array();
  for (const auto &s : w)
    a.push_back(s);
  return a;
}

void require_format(const Common &c) {
  if (c.format != "json" && c.format != "csv")
    throw aps::InvalidConfig("--format must be csv or json, got '" + c.format + "'");
}

// ---- lorentz ---------------------------------------------------------------

struct LorentzArgs {
  double charge = 1.0, mass = 1.0;
  double ex = 0, ey = 0, ez = 0, bx = 0, by = 0, bz = 1.0;
  double vx = 0, vy = 0, vz = 0;
  double tilt = 0.0;
  double duration = 2.0 * std::numbers::pi;
  double dtau = 1e-3;
  bool gauge = false;
  std::size_t record_every = 100;
};

void run_lorentz(const LorentzArgs &a, const Common &common) {
  const aps::Particle particle = aps::Particle::make(a.charge, a.mass);
  const aps::Biparavector F{{a.ex, a.ey, a.ez}, {a.bx, a.by, a.bz}};
  const aps::LorentzRotor L0 =
      aps::boost_from_velocity({a.vx, a.vy, a.vz}) * aps::rotor_about({0, 1, 0}, a.tilt);
  aps::IntegratorOptions opt;
  opt.duration = a.duration;
  opt.dtau = a.dtau;
  opt.gauge = a.gauge;
  opt.record_every = a.record_every;
  const aps::Trajectory traj =
      aps::evolve_numeric({L0, 0.0}, aps::Paravector{}, aps::EMField::constant(F), particle, opt);

  if (common.format == "csv") {
    aps::io::CsvTable t({"tau", "x0", "x1", "x2", "x3", "u0", "u1", "u2", "u3", "s1", "s2", "s3",
                         "unimodularity"});
    for (const auto &p : traj.points) {
      const aps::Paravector u = aps::proper_velocity(p.L);
      const aps::Vec3 s = aps::spin_vector(p.L);
      t.add_row({p.tau, p.x[0], p.x[1], p.x[2], p.x[3], u[0], u[1], u[2], u[3], s.x, s.y, s.z,
                 p.unimodularity_error});
    }
    emit(common, t.str());
    return;
  }
  double max_u_err = 0.0;
  for (const auto &p : traj.points) {
    const auto an = aps::evolve_analytic({L0, 0.0}, F, particle, p.tau, a.gauge);
    max_u_err = std::fmax(max_u_err,
                          (aps::proper_velocity(an.L) - aps::proper_velocity(p.L)).mv().norm());
  }
  const auto &last = traj.back();
  json j = aps::io::summary("lorentz");
  j["steps"] = traj.steps;
  j["final"] = {{"tau", last.tau},
                {"x", aps::io::to_json(last.x)},
                {"u0", aps::io::to_json(aps::proper_velocity(last.L))},
                {"lambda", aps::io::to_json(last.L.mv())}};
  j["max_unimodularity_error"] = traj.max_unimodularity_error;
  j["max_pre_projection_drift"] = traj.max_pre_projection_drift;
  j["max_u0_error_vs_analytic"] = max_u_err;
  emit(common, dump(j));
}

// ---- stern-gerlach -----------------------------------------------------------

struct SternGerlachArgs {
  aps::SGConfig cfg;
  std::optional<double> t;       // profile time for CSV output
  std::optional<double> t_final; // measurement time
};

void run_stern_gerlach(const SternGerlachArgs &a, const Common &common) {
  const auto warnings = aps::validate(a.cfg);
  // default: branches 12σ apart
  const double t_final = a.t_final.value_or(6.0 * a.cfg.sigma / a.cfg.dv);
  if (common.format == "csv") {
    const aps::BeamProfile prof = aps::profiles(a.cfg, a.t.value_or(t_final));
    aps::io::CsvTable t({"z", "rho", "J0", "J1", "J2", "J3", "S0", "S1", "S2", "S3",
                         "interference"});
    for (const auto &p : prof.points)
      t.add_row({p.z, p.rho, p.J[0], p.J[1], p.J[2], p.J[3], p.S[0], p.S[1], p.S[2], p.S[3],
                 p.interference});
    emit(common, t.str());
    return;
  }
  const aps::Outcomes out = aps::measure_outcomes(a.cfg, t_final);
  json j = aps::io::summary("stern-gerlach");
  j["p_up"] = out.p_up;
  j["p_down"] = out.p_down;
  j["overlap"] = out.overlap;
  j["separation"] = out.separation;
  j["t_final"] = t_final;
  j["warnings"] = warnings_json(out.warnings);
  emit(common, dump(j));
}

// ---- dirac-planewave ---------------------------------------------------------

struct PlaneWaveArgs {
  double px = 0.3, py = 0.0, pz = 0.0, mass = 1.0;
  double phi = 0.0, theta = 0.0, chi = 0.0, amplitude = 1.0;
  double t = 0.0, x = 0.0, y = 0.0, z = 0.0;
  double sweep_min = 0.0, sweep_max = 10.0;
  std::size_t points = 101;
};

void run_dirac_planewave(const PlaneWaveArgs &a, const Common &common) {
  const aps::PlaneWave w = aps::PlaneWave::on_shell(
      {a.px, a.py, a.pz}, a.mass, aps::euler_rotor(a.phi, a.theta, a.chi), a.amplitude);
  if (common.format == "csv") {
    if (a.points < 2)
      throw aps::InvalidConfig("--points must be at least 2");
    aps::io::CsvTable t({"x", "J0", "J1", "J2", "J3", "S0", "S1", "S2", "S3", "re_upper"});
    for (std::size_t k = 0; k < a.points; ++k) {
      const double x = a.sweep_min + (a.sweep_max - a.sweep_min) * static_cast<double>(k) /
                                         static_cast<double>(a.points - 1);
      const aps::Multivector Psi = w(aps::Paravector(a.t, {x, a.y, a.z}));
      const aps::Paravector J = aps::current(Psi), S = aps::spin_current(Psi);
      const auto weyl = aps::to_bispinor(Psi, aps::BispinorRep::Weyl);
      t.add_row({x, J[0], J[1], J[2], J[3], S[0], S[1], S[2], S[3], weyl[0].real()});
    }
    emit(common, t.str());
    return;
  }
  const aps::Paravector pos(a.t, {a.x, a.y, a.z});
  const aps::Multivector Psi = w(pos);
  const auto weyl = aps::to_bispinor(Psi, aps::BispinorRep::Weyl);
  const auto dp = aps::to_bispinor(Psi, aps::BispinorRep::DiracPauli);
  const auto split = aps::large_small_split(Psi);
  double dirac_matrix = 0.0;
  for (const auto &z : aps::dirac_momentum_residual(weyl, w.p, a.mass))
    dirac_matrix = std::fmax(dirac_matrix, std::abs(z));

  json j = aps::io::summary("dirac-planewave");
  j["momentum"] = aps::io::to_json(w.p);
  j["psi"] = aps::io::to_json(Psi);
  j["weyl"] = aps::io::to_json(weyl);
  j["dirac_pauli"] = aps::io::to_json(dp);
  j["current"] = aps::io::to_json(aps::current(Psi));
  j["spin_current"] = aps::io::to_json(aps::spin_current(Psi));
  j["large"] = aps::io::to_json(split.large);
  j["small"] = aps::io::to_json(split.small);
  j["classical_dirac_residual"] = aps::classical_dirac_residual(Psi, w.p, a.mass).norm();
  j["matrix_dirac_residual"] = dirac_matrix;
  j["second_order_residual"] = aps::dirac2_residual(Psi, w.p, a.mass).norm();
  emit(common, dump(j));
}

// ---- check-identities --------------------------------------------------------

void run_check_identities(std::size_t trials, std::uint64_t seed, const Common &common) {
  const aps::IdentityCheckReport r = aps::check_identities(trials, seed);
  if (common.format == "csv") {
    aps::io::CsvTable t({"trials", "max_rel_err", "product", "reversion", "clifford", "inverse",
                         "trace", "determinant", "all_passed"});
    t.add_row({static_cast<double>(r.trials), r.max_rel_err, r.product, r.reversion, r.clifford,
               r.inverse, r.trace, r.determinant, r.all_passed ? 1.0 : 0.0});
    emit(common, t.str());
    return;
  }
  json j = aps::io::summary("check-identities");
  j["trials"] = r.trials;
  j["seed"] = seed;
  j["all_passed"] = r.all_passed;
  j["max_rel_err"] = r.max_rel_err;
  j["channels"] = {{"product", r.product},     {"reversion", r.reversion},
                   {"clifford", r.clifford},   {"inverse", r.inverse},
                   {"trace", r.trace},         {"determinant", r.determinant}};
  j["inverse_skipped"] = r.inverse_skipped;
  emit(common, dump(j));
}

// ---- fermion-gen -------------------------------------------------------------

void run_fermion_gen(int modes, const Common &common) {
  const aps::FermionReport rep = aps::fermion_report(modes);
  if (common.format == "csv") {
    aps::io::CsvTable t({"modes", "car", "clifford", "algebra_dimension"});
    t.add_row({static_cast<double>(rep.n), rep.car_ok ? 1.0 : 0.0, rep.clifford_ok ? 1.0 : 0.0,
               rep.dimension ? static_cast<double>(*rep.dimension) : -1.0});
    emit(common, t.str());
    return;
  }
  json j = aps::io::summary("fermion-gen");
  j["report"] = aps::io::to_json(rep);
  const aps::FermionModeSet set = aps::build_modes(modes);
  if (modes == 1)
    j["null_flags"] = aps::null_flag_check(set).all();
  if (modes == 2)
    j["spin4"] = aps::spin4_check(aps::generate_basis(set)).ok();
  emit(common, dump(j));
}

// ---- magnetic-moment ---------------------------------------------------------

struct MomentArgs {
  std::string particle = "electron";
  bool si = false;
  double charge = 1.0, mass = 1.0, field = 1e-3;
};

void run_magnetic_moment(const MomentArgs &a, const Common &common) {
  json j = aps::io::summary("magnetic-moment");
  if (a.si) {
    if (a.particle != "electron")
      throw aps::InvalidConfig("only --particle electron has built-in SI constants");
    aps::io::PhysicalConstants k = aps::io::PhysicalConstants::codata();
    if (!common.constants_file.empty())
      k = aps::io::PhysicalConstants::from_config(
          aps::io::KeyValueConfig::load(common.constants_file));
    const aps::io::ElectronScales s = aps::io::electron_scales(k);
    j["units"] = "SI";
    j["omega0"] = s.omega0;
    j["threshold_field"] = s.threshold_field;
    j["critical_field"] = s.critical_field;
    j["magnetic_moment"] = s.moment;
    j["constants"] = {{"hbar", k.hbar},
                      {"c", k.c},
                      {"electron_mass", k.electron_mass},
                      {"elementary_charge", k.elementary_charge}};
  } else {
    const aps::Particle p = aps::Particle::make(a.charge, a.mass);
    const aps::RotationShift r = aps::magnetic_rotation_shift(p, {0, 0, a.field}, {0, 0, 1});
    j["units"] = "natural";
    j["omega0"] = p.omega0;
    j["threshold_field"] = r.threshold_field;
    j["exact_rate"] = r.exact_rate;
    j["first_order_rate"] = r.first_order_rate;
    j["interaction_energy"] = r.interaction_energy;
    j["magnetic_moment"] = r.moment.z;
    j["g_factor"] = aps::cyclotron_larmor_ratio(p, std::fabs(a.field) > 0 ? std::fabs(a.field) : 1.0) * 2.0;
    j["warnings"] = warnings_json(r.warnings);
  }
  emit(common, dump(j));
}

int report_error(const std::string &module, const std::string &kind, const std::string &msg,
                 int code) {
  const json j = {{"module", module}, {"kind", kind}, {"message", msg}};
  std::cerr << j.dump() << "\n";
  return code;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Spin and Lorentz-dynamics toolkit on the algebra of physical space"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI-style key = value file; flags override it");

  Common common;
  app.add_option("-o,--output", common.output, "Output path (default stdout)");
  app.add_option("-f,--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--constants", common.constants_file, "Override file for SI constants");

  LorentzArgs la;
  auto *lor = app.add_subcommand("lorentz", "Integrate a charged eigenspinor in a constant field");
  lor->add_option("--charge", la.charge);
  lor->add_option("--mass", la.mass);
  lor->add_option("--ex", la.ex);
  lor->add_option("--ey", la.ey);
  lor->add_option("--ez", la.ez);
  lor->add_option("--bx", la.bx);
  lor->add_option("--by", la.by);
  lor->add_option("--bz", la.bz);
  lor->add_option("--vx", la.vx);
  lor->add_option("--vy", la.vy);
  lor->add_option("--vz", la.vz);
  lor->add_option("--tilt", la.tilt, "Initial spin tilt from e3 about e2 (rad)");
  lor->add_option("--duration", la.duration);
  lor->add_option("--dtau", la.dtau);
  lor->add_flag("--gauge", la.gauge, "Include the intrinsic spin rotation");
  lor->add_option("--record-every", la.record_every);

  SternGerlachArgs sa;
  auto *sg = app.add_subcommand("stern-gerlach", "Split a spin state into two boosted beams");
  sg->add_option("--theta", sa.cfg.theta);
  sg->add_option("--phi", sa.cfg.phi);
  sg->add_option("--chi", sa.cfg.chi);
  sg->add_option("--v", sa.cfg.v);
  sg->add_option("--dv", sa.cfg.dv);
  sg->add_option("--sigma", sa.cfg.sigma);
  sg->add_option("--z-min", sa.cfg.z_min);
  sg->add_option("--z-max", sa.cfg.z_max);
  sg->add_option("--points", sa.cfg.points);
  sg->add_option("--t", sa.t, "Profile time for CSV output");
  sg->add_option("--t-final", sa.t_final, "Measurement time (default: 12 sigma separation)");

  PlaneWaveArgs pa;
  auto *pw = app.add_subcommand("dirac-planewave", "Bispinors and currents of a plane wave");
  pw->add_option("--px", pa.px);
  pw->add_option("--py", pa.py);
  pw->add_option("--pz", pa.pz);
  pw->add_option("--mass", pa.mass);
  pw->add_option("--phi", pa.phi);
  pw->add_option("--theta", pa.theta);
  pw->add_option("--chi", pa.chi);
  pw->add_option("--amplitude", pa.amplitude);
  pw->add_option("--t", pa.t);
  pw->add_option("--x", pa.x);
  pw->add_option("--y", pa.y);
  pw->add_option("--z", pa.z);
  pw->add_option("--sweep-min", pa.sweep_min);
  pw->add_option("--sweep-max", pa.sweep_max);
  pw->add_option("--points", pa.points);

  std::size_t trials = 10000;
  std::uint64_t seed = 42;
  auto *ci = app.add_subcommand("check-identities", "Compare algebra operations with 2x2 matrices");
  ci->add_option("--trials", trials);
  ci->add_option("--seed", seed);

  int modes = 1;
  auto *fg = app.add_subcommand("fermion-gen", "Generate the algebra from fermion ladder operators");
  fg->add_option("--modes", modes);

  MomentArgs ma;
  auto *mm = app.add_subcommand("magnetic-moment", "Rotation-rate shift and magnetic moment");
  mm->add_option("--particle", ma.particle);
  mm->add_flag("--si", ma.si, "Use SI constants");
  mm->add_option("--charge", ma.charge);
  mm->add_option("--mass", ma.mass);
  mm->add_option("--field", ma.field, "Field along e3 (natural units)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return report_error("cli_io", "InvalidConfig", e.what(), 1);
  }

  try {
    require_format(common);
    if (*lor)
      run_lorentz(la, common);
    else if (*sg)
      run_stern_gerlach(sa, common);
    else if (*pw)
      run_dirac_planewave(pa, common);
    else if (*ci)
      run_check_identities(trials, seed, common);
    else if (*fg)
      run_fermion_gen(modes, common);
    else if (*mm)
      run_magnetic_moment(ma, common);
  } catch (const aps::Error &e) {
    return report_error(e.module(), e.kind(), e.what(), 2);
  } catch (const std::exception &e) {
    return report_error("cli_io", "Internal", e.what(), 3);
  }
  return 0;
}
