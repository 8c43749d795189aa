#include "presentation_args.hpp"

#include "blab/errors.hpp"

namespace blab::cli {

void PresentationArgs::attach(CLI::App* sub) {
  sub->add_option("--presentation", file, "Presentation JSON file");
  sub->add_flag("--empty", empty, "Use the presentation with no periods");
  sub->add_option("--m", m, "Number of generators")->capture_default_str();
  sub->add_option("--max-rank", max_rank, "Largest period rank")->capture_default_str();
  sub->add_option("--variant", variant,
                  "maximal, avoid-subgroup, theta-filtered, coprime-split, schedule-gated")
      ->capture_default_str();
  sub->add_option("--n", n, "Base exponent")->capture_default_str();
  sub->add_option("--theta", theta, "theta for the filtered variants")->capture_default_str();
  sub->add_option("--n1", n1, "Exponent of theta-periods (coprime-split)");
  sub->add_option("--n2", n2, "Exponent of the other periods (coprime-split)");
  sub->add_option("--schedule-K", K, "Schedule constant (schedule-gated)");
  sub->add_option("--schedule-r1", r1, "First schedule radius (schedule-gated)");
}

Presentation PresentationArgs::load(const GlobalOptions& g) const {
  if (!file.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(file));
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(file + ": " + e.what());
    }
    return presentation_from_json(j);
  }
  const Variant v = parse_variant(variant);
  ParameterSystem params;
  params.m = m;
  params.n = n;
  params.theta = theta;
  const Alphabet alphabet(m, v == Variant::kAvoidSubgroup);
  if (empty) {
    return Presentation(alphabet, params, v);
  }
  BuildOptions o;
  o.variant = v;
  o.max_rank = max_rank;
  o.theta = theta;
  o.n1 = n1;
  o.n2 = n2;
  o.schedule_K = K;
  o.schedule_r1 = r1;
  o.census = g.census();
  return build_presentation(alphabet, params, o);
}

}  // namespace blab::cli
