#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "asyncmodel/blc.hpp"
#include "asyncmodel/error.hpp"
#include "asyncmodel/inertia.hpp"
#include "asyncmodel/io.hpp"
#include "asyncmodel/props.hpp"

namespace asyncmodel::cli {

namespace fs = std::filesystem;

namespace {

MultiSignal read_inputs(const std::vector<std::string>& paths) {
  MultiSignal u;
  for (const auto& p : paths) u.push_back(signal_from_json(read_json_file(p)));
  return u;
}

bool deterministic(const LimitCondition& i) {
  if (i.known_deterministic()) return true;
  if (auto b = as_blc(i)) return blc_is_deterministic(b->f, b->g, b->p).deterministic;
  if (auto b = as_bailc(i)) return blc_is_deterministic(b->blc.f, b->blc.g, b->blc.p).deterministic;
  return false;
}

fs::path numbered(const fs::path& out, std::size_t k) {
  const auto ext = out.has_extension() ? out.extension().string() : std::string(".json");
  return out.parent_path() / (out.stem().string() + "." + std::to_string(k) + ext);
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << dump(j);
  } else {
    write_json_file(path, j);
  }
}

struct EvalArgs {
  std::string model;
  std::vector<std::string> inputs;
  std::string out;
  std::size_t witness = 0;
  std::uint64_t seed = 0;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const auto i = model_from_json(read_json_file(a.model));
  const auto u = read_inputs(a.inputs);
  if (a.witness == 0) {
    if (!deterministic(i)) {
      throw model_error(errc::precondition_violated,
                        "the " + std::string(kind_name(i.kind())) + " model is not deterministic; pass --witness n");
    }
    const auto members = i.sample(u, 1, a.seed);
    if (members.empty()) throw model_error(errc::precondition_violated, "the model has no member for this input");
    emit(signal_to_json(members.front()), a.out, out);
    return 0;
  }
  const auto members = i.sample(u, a.witness, a.seed);
  if (members.empty()) throw model_error(errc::precondition_violated, "the model has no member for this input");
  if (members.size() < a.witness) err << "only " << members.size() << " distinct members found\n";
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (a.out.empty()) {
      out << dump(signal_to_json(members[k]));
    } else {
      const auto path = numbered(a.out, k);
      write_json_file(path, signal_to_json(members[k]));
      out << path.string() << "\n";
    }
  }
  return 0;
}

struct CheckArgs {
  std::string model;
  std::vector<std::string> inputs;
  std::string candidate;
  std::vector<std::string> aic;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const auto x = signal_from_json(read_json_file(a.candidate));
  if (a.model.empty() && a.aic.empty()) {
    throw model_error(errc::precondition_violated, "check needs a model, --aic, or both");
  }
  if (!a.aic.empty()) {
    const AicParams p{parse_rat(a.aic[0]), parse_rat(a.aic[1])};
    p.validate();
    if (auto t = aic_violation(x, p)) {
      out << "not inertial: pulse starting at t=" << to_string(*t) << " is too short\n";
      return 1;
    }
  }
  if (!a.model.empty()) {
    const auto i = model_from_json(read_json_file(a.model));
    const auto u = read_inputs(a.inputs);
    switch (i.decide(u, x)) {
      case Membership::yes:
        break;
      case Membership::inconclusive:
        out << "not a member: the witness search ran out of budget\n";
        return 1;
      case Membership::no: {
        if (auto t = envelope_violation(i, u, x)) {
          out << "not a member: violation at t=" << to_string(*t) << "\n";
        } else {
          out << "not a member: " << i.explain(u, x).value_or("no reason available") << "\n";
        }
        return 1;
      }
    }
  }
  out << "member\n";
  return 0;
}

int cmd_compose(const std::string& outer_path, const std::vector<std::string>& inner_paths, const std::string& dest,
                std::ostream& out) {
  const auto outer = model_from_json(read_json_file(outer_path));
  std::vector<LimitCondition> inners;
  for (const auto& p : inner_paths) inners.push_back(model_from_json(read_json_file(p)));
  emit(model_to_json(serial_closed_form(outer, inners)), dest, out);
  return 0;
}

struct PropsArgs {
  std::uint64_t seed = 42;
  std::size_t cases = 500;
  std::vector<std::string> only;
  std::string dir = ".";
  bool serial = false;
};

int cmd_props(const PropsArgs& a, std::ostream& out) {
  GenConfig cfg;
  cfg.seed = a.seed;
  cfg.cases = a.cases;
  cfg.validate();
  const auto ids = a.only.empty() ? theorem_ids() : a.only;
  for (const auto& id : ids) find_theorem(id);
  bool ok = true;
  for (const auto& id : ids) {
    const auto report = run_theorem(id, cfg, a.serial ? Execution::serial : Execution::parallel);
    out << report_line(report) << "\n";
    if (!report.passed()) {
      ok = false;
      const fs::path path = fs::path(a.dir) / ("counterexample-" + id + ".json");
      write_json_file(path, report_to_json(report));
      out << "  first failure (case " << report.failures.front()["case"].get<std::int64_t>()
          << "): " << report.failures.front()["message"].get<std::string>() << "\n";
      out << "  counterexamples written to " << path.string() << "\n";
    }
  }
  return ok ? 0 : 1;
}

// ---- render -------------------------------------------------------------------

std::int64_t lcm_of_denominators(const std::vector<Signal>& xs, const Rat& from, const Rat& to) {
  std::int64_t l = std::lcm(from.denominator(), to.denominator());
  for (const auto& x : xs)
    for (const auto& t : x.transitions()) l = std::lcm(l, t.time.denominator());
  return l;
}

struct RenderArgs {
  std::vector<std::string> inputs;
  std::string from;
  std::string to;
  std::string vcd;
};

std::string vcd_id(std::size_t k) {
  std::string id;
  do {
    id.push_back(static_cast<char>('!' + k % 94));
    k /= 94;
  } while (k > 0);
  return id;
}

void write_vcd(const fs::path& path, const std::vector<std::string>& names, const std::vector<Signal>& xs,
               const Rat& from, const Rat& to) {
  const auto l = lcm_of_denominators(xs, from, to);
  std::ofstream f(path);
  if (!f) throw model_error(errc::parse_error, "cannot write " + path.string());
  f << "$timescale " << (l == 1 ? std::string("1") : "1/" + std::to_string(l)) << " s $end\n";
  f << "$scope module signals $end\n";
  for (std::size_t k = 0; k < xs.size(); ++k) f << "$var wire 1 " << vcd_id(k) << ' ' << names[k] << " $end\n";
  f << "$upscope $end\n$enddefinitions $end\n";
  auto tick = [&](const Rat& t) { return (t * l).numerator(); };
  f << '#' << tick(from) << "\n$dumpvars\n";
  for (std::size_t k = 0; k < xs.size(); ++k) f << (xs[k].at(from) ? '1' : '0') << vcd_id(k) << "\n";
  f << "$end\n";
  std::set<Rat> times;
  for (const auto& x : xs)
    for (const auto& t : x.transitions())
      if (t.time > from && t.time <= to) times.insert(t.time);
  for (const auto& t : times) {
    f << '#' << tick(t) << "\n";
    for (std::size_t k = 0; k < xs.size(); ++k)
      if (xs[k].at(t) != xs[k].left_limit(t)) f << (xs[k].at(t) ? '1' : '0') << vcd_id(k) << "\n";
  }
}

int cmd_render(const RenderArgs& a, std::ostream& out) {
  const Rat from = parse_rat(a.from);
  const Rat to = parse_rat(a.to);
  if (!(from < to)) throw model_error(errc::precondition_violated, "empty range: --from must be below --to");
  std::vector<Signal> xs;
  std::vector<std::string> names;
  for (const auto& p : a.inputs) {
    xs.push_back(signal_from_json(read_json_file(p)));
    names.push_back(fs::path(p).stem().string());
  }
  std::set<Rat> cols{from};
  for (const auto& x : xs)
    for (const auto& t : x.transitions())
      if (t.time > from && t.time <= to) cols.insert(t.time);
  std::vector<std::string> heads;
  for (const auto& t : cols) heads.push_back(to_string(t));
  std::size_t label = 1;
  for (const auto& n : names) label = std::max(label, n.size());
  auto pad = [](const std::string& s, std::size_t w) { return std::string(w - std::min(w, s.size()), ' ') + s; };
  out << std::string(label, ' ');
  for (const auto& h : heads) out << ' ' << h;
  out << "\n";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    out << names[k] << std::string(label - names[k].size(), ' ');
    std::size_t c = 0;
    for (const auto& t : cols) out << ' ' << pad(xs[k].at(t) ? "1" : "0", heads[c++].size());
    out << "\n";
  }
  if (!a.vcd.empty()) write_vcd(a.vcd, names, xs, from, to);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boolean signal models of asynchronous circuits", "asyncmodel"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "sample or compute the output of a model");
  e->add_option("model", eval.model, "model file")->required();
  e->add_option("inputs", eval.inputs, "input signal files")->required();
  e->add_option("-o,--out", eval.out, "output signal file (numbered with --witness)");
  e->add_option("--witness", eval.witness, "emit up to n sampled members");
  e->add_option("--seed", eval.seed, "sampler seed");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "test a candidate signal for membership");
  c->add_option("model", check.model, "model file");
  c->add_option("inputs", check.inputs, "input signal files");
  c->add_option("-c,--candidate", check.candidate, "candidate signal file")->required();
  c->add_option("--aic", check.aic, "inertial bounds delta_r delta_f")->expected(2);

  std::string outer;
  std::vector<std::string> inners;
  std::string compose_out;
  auto* k = app.add_subcommand("compose", "closed form of a serial connection");
  k->add_option("outer", outer, "outer model file")->required();
  k->add_option("inners", inners, "inner model files")->required();
  k->add_option("-o,--out", compose_out, "output model file");

  PropsArgs props;
  auto* p = app.add_subcommand("props", "run the theorem checks");
  p->add_option("--seed", props.seed, "generator seed");
  p->add_option("--cases", props.cases, "cases per theorem");
  p->add_option("--only", props.only, "theorem ids to run");
  p->add_option("--dir", props.dir, "directory for counterexample files");
  p->add_flag("--serial", props.serial, "run cases on one thread");

  RenderArgs render;
  auto* r = app.add_subcommand("render", "ASCII waveform and VCD export");
  r->add_option("inputs", render.inputs, "signal files")->required();
  r->add_option("--from", render.from, "start time")->required();
  r->add_option("--to", render.to, "end time")->required();
  r->add_option("--vcd", render.vcd, "write a value change dump");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << ex.what() << "\n";
    return 2;
  }

  try {
    if (*e) return cmd_eval(eval, out, err);
    if (*c) return cmd_check(check, out);
    if (*k) return cmd_compose(outer, inners, compose_out, out);
    if (*p) return cmd_props(props, out);
    if (*r) return cmd_render(render, out);
  } catch (const model_error& ex) {
    err << ex.what() << "\n";
  } catch (const json::exception& ex) {
    err << error_name(errc::parse_error) << ": " << ex.what() << "\n";
  } catch (const fs::filesystem_error& ex) {
    err << error_name(errc::parse_error) << ": " << ex.what() << "\n";
  }
  return 2;
}

}  // namespace asyncmodel::cli
