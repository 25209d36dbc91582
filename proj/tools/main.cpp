#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "semiperfect/commands.hpp"
#include "semiperfect/errors.hpp"

using namespace semiperfect;

namespace {

// "p,N"
RingDescriptor parse_ring_flag(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("--ring expects p,N");
  try {
    return RingDescriptor::truncated(static_cast<Coeff>(std::stoul(text.substr(0, comma))),
                                     static_cast<unsigned>(std::stoul(text.substr(comma + 1))));
  } catch (const std::logic_error&) {
    throw ParseError("--ring expects p,N");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topologically semiperfect endomorphism rings over discrete valuation rings"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string ring_flag;
  long long pattern_flag = 0;
  CommandOptions opt;
  std::string out_dir = ".";
  app.add_option("--ring", ring_flag, "truncated base ring F_p[t]/(t^N), given as p,N");
  app.add_option("--pattern", pattern_flag, "pattern base ring F_p[t]_(t), given as p");
  app.add_option("--seed", opt.seed, "seed for randomized runs");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--K", opt.K, "largest k checked by the locally-split claim (jacobson-gap) or chain length (split)");

  std::string input;
  struct Verb {
    const char* name;
    const char* help;
    bool takes_file;
  };
  const Verb verbs[] = {
      {"decompose", "Smith decomposition of a presentation", true},
      {"certify-semiperfect", "complete family of local summand projectors", true},
      {"jacobson-gap", "the abstract and topological Jacobson radicals differ", false},
      {"lift", "Hensel lift of an idempotent modulo the radical", true},
      {"split", "split an idempotent into orthogonal local idempotents", true},
      {"radical", "radical and semisimple top of a finitely generated module", true},
      {"cover", "projective cover of a finitely generated module", true},
      {"dual", "reread a matrix on the other side of the duality", true},
  };
  for (const auto& v : verbs) {
    auto* sub = app.add_subcommand(v.name, v.help);
    if (v.takes_file) sub->add_option("file", input, "input JSON file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (!ring_flag.empty() && pattern_flag != 0) throw ParseError("--ring and --pattern are exclusive");
    if (!ring_flag.empty()) opt.ring = parse_ring_flag(ring_flag);
    if (pattern_flag != 0) opt.ring = RingDescriptor::pattern(static_cast<Coeff>(pattern_flag));
  } catch (const Error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInputError;
  }
  opt.out_dir = out_dir;

  const std::string verb = app.get_subcommands().front()->get_name();
  if (verb == "decompose") return cmd_decompose(opt, input);
  if (verb == "certify-semiperfect") return cmd_certify_semiperfect(opt, input);
  if (verb == "jacobson-gap") return cmd_jacobson_gap(opt);
  if (verb == "lift") return cmd_lift(opt, input);
  if (verb == "split") return cmd_split(opt, input);
  if (verb == "radical") return cmd_radical(opt, input);
  if (verb == "cover") return cmd_cover(opt, input);
  return cmd_dual(opt, input);
}
