#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fci/commands.hpp"

namespace {

struct Args {
  std::string spec;
  int level = 0;
  std::string levels;
  int window = 0;
  std::int64_t cap = 0;
  std::string element;
  std::string family;
  std::string format = "text";
  std::vector<std::string> classify_words;
};

fci::CommandOptions to_options(const Args& a, CLI::App& sub) {
  fci::CommandOptions o;
  if (sub.count("--level") > 0) o.level = a.level;
  if (sub.count("--window") > 0) o.window = a.window;
  if (sub.count("--cap") > 0) o.cap = a.cap;
  if (!a.levels.empty()) {
    static const std::regex re(R"(^(\d+)\.\.(\d+)$)");
    std::smatch m;
    if (!std::regex_match(a.levels, m, re)) throw CLI::ValidationError("--levels", "expected A..B");
    o.levels = {std::stoi(m[1].str()), std::stoi(m[2].str())};
    if (o.levels->first < 1 || o.levels->second < o.levels->first) {
      throw CLI::ValidationError("--levels", "empty range");
    }
  }
  o.element = a.element;
  o.family = a.family;
  o.machine = a.format == "machine";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build groups from spec files and check centralizer conditions"};
  app.require_subcommand(1);
  Args args;

  for (const auto& name : fci::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    if (name == "classify") {
      // "classify [thm32|thm36] SPEC": the family defaults to the kind named in the spec.
      sub->add_option("args", args.classify_words, "[family] spec")->expected(1, 2)->required();
    } else {
      sub->add_option("spec", args.spec, "spec file, or a directory of *.json spec files")->required();
    }
    sub->add_option("--level", args.level, "truncation level for quasicyclic components")
        ->check(CLI::PositiveNumber);
    sub->add_option("--levels", args.levels, "ladder range A..B");
    sub->add_option("--window", args.window, "sampling window")->check(CLI::PositiveNumber);
    sub->add_option("--cap", args.cap, "largest group order to enumerate")->check(CLI::PositiveNumber);
    sub->add_option("--format", args.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    if (name == "centralizer") sub->add_option("--element", args.element, "e.g. g^1 or g^2*[1,0]")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  CLI::App* sub = app.get_subcommands().front();
  fci::CommandOptions opt;
  try {
    if (!args.classify_words.empty()) {
      args.spec = args.classify_words.back();
      if (args.classify_words.size() == 2) {
        args.family = args.classify_words.front();
        if (args.family != "thm32" && args.family != "thm36") {
          throw CLI::ValidationError("family", args.family + " not in {thm32,thm36}");
        }
      }
    }
    opt = to_options(args, *sub);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  const fci::CommandResult r = fci::run_on_path(sub->get_name(), args.spec, opt);
  std::cout << r.output;
  return r.exit_code;
}
