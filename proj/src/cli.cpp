#include "drum/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <variant>

#include "drum/error.hpp"
#include "drum/group_io.hpp"
#include "drum/polygon_io.hpp"
#include "drum/search.hpp"
#include "drum/spectral.hpp"
#include "drum/tiling_io.hpp"
#include "drum/transplant.hpp"
#include "drum/unfold.hpp"

namespace drum::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kEvidenceFooter =
    "note: numerical agreement at fixed h is evidence, not proof; "
    "isospectrality is proved by transplantation.";

std::string sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string coordText(const Rational& x) { return toString(x); }
std::string coordText(double x) { return sig12(x); }
Json coordJson(const Rational& x) { return toString(x); }
Json coordJson(double x) { return x; }

Json specJson(const TilingSpec& spec) {
  Json edges = Json::array();
  for (const auto& e : spec.edges) edges.push_back({e.color, e.i, e.j});
  return {{"tiles", spec.tileCount}, {"colors", spec.colorCount}, {"edges", edges}};
}

Json matrixJson(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(toString(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

std::string certaintyText(Certainty c) {
  switch (c) {
    case Certainty::Found:
      return "found";
    case Certainty::ProvedNone:
      return "proved-none";
    case Certainty::NoneFound:
      return "none-found";
  }
  return "?";
}

std::string kindText(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
      return "invalid-input";
    case ErrorKind::Parse:
      return "parse";
    case ErrorKind::CapExceeded:
      return "cap-exceeded";
    case ErrorKind::BudgetExceeded:
      return "budget-exceeded";
    case ErrorKind::NotConverged:
      return "not-converged";
    case ErrorKind::Io:
      return "io";
  }
  return "?";
}

int exitCodeFor(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::Parse:
    case ErrorKind::Io:
      return kUsageError;
    default:
      return kResourceError;
  }
}

Json envelope(const std::string& command) {
  return {{"schema", 1}, {"command", command}};
}

struct Context {
  bool json = false;
  std::ostringstream out;
  Json record;
  int exitCode = kOk;
};

// Base tile selected by --tile: exact polygons stay rational, the regular
// r-gon is floating point.
using AnyTile = std::variant<BaseTile<Rational>, BaseTile<double>>;

AnyTile selectTile(const std::string& choice, std::size_t colors) {
  if (choice == "default") {
    if (colors != 3) {
      fail(ErrorKind::InvalidInput, "the default right triangle needs 3 colors, spec has " +
                                        std::to_string(colors));
    }
    return defaultTriangle();
  }
  if (choice == "regular") return regularTile(colors);
  if (choice.rfind("file:", 0) == 0) {
    BaseTile<Rational> tile{readPolygon(choice.substr(5))};
    requireValidTile(tile);
    return tile;
  }
  fail(ErrorKind::InvalidInput, "unknown tile '" + choice + "' (default|regular|file:<poly>)");
}

template <class T>
Json polygonJson(const Polygon<T>& poly) {
  Json out = Json::array();
  for (const auto& p : poly) out.push_back({coordJson(p.x), coordJson(p.y)});
  return out;
}

template <class T>
std::string polygonText(const Polygon<T>& poly) {
  std::string s;
  for (const auto& p : poly) s += "  " + coordText(p.x) + " " + coordText(p.y) + "\n";
  return s;
}

Rational parsePositive(const std::string& text, const char* what) {
  const Rational v = parseRational(text);
  if (v <= 0) fail(ErrorKind::InvalidInput, std::string(what) + " must be positive");
  return v;
}

template <class T>
T spacingAs(const Rational& h) {
  if constexpr (std::is_same_v<T, Rational>) {
    return h;
  } else {
    return h.get_d();
  }
}

Json spectrumJson(const Spectrum& s) {
  return {{"h", s.h},
          {"unknowns", s.unknowns},
          {"method", s.method},
          {"eigenvalues", s.eigenvalues},
          {"residuals", s.residuals}};
}

void cmdValidate(Context& ctx, const std::string& file) {
  const TilingSpec spec = readTiling(file);
  const bool connected = isConnected(spec);
  const bool tree = isTree(spec);
  const std::size_t lhs = (spec.colorCount - 2) * spec.tileCount + 2;
  const std::size_t fix = fixedPointSum(spec);
  const auto unused = unusedColors(spec);
  Json groupOrder = nullptr;
  Json twoTransitive = nullptr;
  std::string groupLine = "operator group: n/a (disconnected)";
  if (connected) {
    try {
      const auto g = operatorGroup(spec);
      groupOrder = g.order();
      twoTransitive = isTwoTransitive(g);
      groupLine = "operator group: order " + std::to_string(g.order()) +
                  (isTwoTransitive(g) ? ", 2-transitive" : ", not 2-transitive");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded) throw;
      groupLine = "operator group: larger than the materialization cap";
    }
  }
  ctx.out << "valid: " << spec.tileCount << " tiles, " << spec.colorCount << " colors, "
          << spec.edges.size() << " edges\n"
          << "connected: " << (connected ? "yes" : "no") << "\n"
          << "tree: " << (tree ? "yes" : "no") << "\n"
          << "fixed-point equation: (r-2)N+2 = " << lhs << ", sum Fix = " << fix
          << (lhs == fix ? " (holds)" : " (fails)") << "\n";
  if (!unused.empty()) {
    ctx.out << "unused colors:";
    for (unsigned c : unused) ctx.out << " " << c;
    ctx.out << "\n";
  }
  ctx.out << groupLine << "\n";
  ctx.record = envelope("validate");
  ctx.record["file"] = file;
  ctx.record["spec"] = specJson(spec);
  ctx.record["connected"] = connected;
  ctx.record["tree"] = tree;
  ctx.record["fixedPointSum"] = fix;
  ctx.record["equationHolds"] = lhs == fix;
  ctx.record["unusedColors"] = unused;
  ctx.record["groupOrder"] = groupOrder;
  ctx.record["twoTransitive"] = twoTransitive;
}

void cmdTable(Context& ctx, std::optional<unsigned> q, bool csv) {
  const auto rows = groupTable(q);
  Json records = Json::array();
  bool allBelow = true;
  std::vector<std::vector<std::string>> cells{
      {"case", "group", "q", "phi", "N", "c", "c value", "c<3"}};
  for (const auto& row : rows) {
    const bool below = row.c < 3;
    allBelow = allBelow && below;
    const std::string qText = row.q ? std::to_string(*row.q) : "-";
    cells.push_back({std::to_string(row.caseNumber), row.group, qText,
                     row.phi.get_str(), row.modulePoints.get_str(), row.cText,
                     toString(row.c), below ? "yes" : "no"});
    Json r{{"case", row.caseNumber},
           {"group", row.group},
           {"q", row.q ? Json(*row.q) : Json(nullptr)},
           {"phiText", row.phiText},
           {"pointsText", row.pointsText},
           {"cText", row.cText},
           {"phi", row.phi.get_str()},
           {"N", row.modulePoints.get_str()},
           {"c", toString(row.c)},
           {"cBelow3", below}};
    records.push_back(r);
  }
  if (csv) {
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        ctx.out << (i ? "," : "") << (i == 6 && &line == &cells.front() ? "c_value" : line[i]);
      }
      ctx.out << "\n";
    }
  } else {
    std::vector<std::size_t> width(cells.front().size(), 0);
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }
    for (const auto& line : cells) {
      std::string text;
      for (std::size_t i = 0; i < line.size(); ++i) {
        text += line[i] + std::string(width[i] - line[i].size() + 2, ' ');
      }
      text.erase(text.find_last_not_of(' ') + 1);
      ctx.out << text << "\n";
    }
  }
  ctx.record = envelope("table");
  ctx.record["rows"] = records;
  ctx.record["allBelow3"] = allBelow;
  if (!allBelow) ctx.exitCode = kVerificationFailed;
}

void cmdClassify(Context& ctx, const std::string& fileA, const std::string& fileB) {
  const TilingSpec a = readTiling(fileA);
  const TilingSpec b = readTiling(fileB);
  const auto result = classify(a, b);
  ctx.out << "verdict: " << verdictName(result.verdict) << "\n"
          << "intertwiner dimension: " << result.intertwinerDimension << "\n";
  if (result.verdict == Verdict::NotTransplantable) {
    ctx.out << "certainty: " << certaintyText(result.certainty) << "\n";
  }
  if (result.witness) {
    ctx.out << "witness T (T*M = N*T for every color):\n" << formatMatrix(*result.witness);
    ctx.out << "det T = " << toString(determinant(*result.witness)) << "\n";
  }
  ctx.record = envelope("classify");
  ctx.record["fileA"] = fileA;
  ctx.record["fileB"] = fileB;
  ctx.record["verdict"] = verdictName(result.verdict);
  ctx.record["intertwinerDimension"] = result.intertwinerDimension;
  ctx.record["certainty"] = certaintyText(result.certainty);
  ctx.record["witness"] = result.witness ? matrixJson(*result.witness) : Json(nullptr);
}

template <class T>
void reportDomain(Context& ctx, const TilingSpec& spec, const BaseTile<T>& tile,
                  std::size_t root, const std::string& svg) {
  const auto domain = buildDomain(spec, tile, root);
  ctx.out << "tiles placed: " << domain.placements.size() << "\n"
          << "embedded: " << (domain.embedded ? "yes" : "no") << "\n";
  Json contacts = Json::array();
  for (const auto& [i, j] : domain.contacts) contacts.push_back({i, j});
  if (domain.embedded) {
    ctx.out << "boundary (" << domain.boundary.size() << " vertices):\n"
            << polygonText(domain.boundary)
            << "area: " << coordText(polygonArea(domain.boundary)) << "\n";
  }
  if (!domain.contacts.empty()) {
    ctx.out << "unglued contacts:";
    for (const auto& [i, j] : domain.contacts) ctx.out << " (" << i << "," << j << ")";
    ctx.out << "\n";
  }
  if (!svg.empty()) {
    exportSvg(domain, spec, tile, svg);
    ctx.out << "svg: " << svg << "\n";
  }
  ctx.record["embedded"] = domain.embedded;
  ctx.record["boundary"] = polygonJson(domain.boundary);
  ctx.record["area"] = domain.embedded ? coordJson(polygonArea(domain.boundary)) : Json(nullptr);
  ctx.record["contacts"] = contacts;
  if (!domain.embedded) ctx.exitCode = kVerificationFailed;
}

void cmdUnfold(Context& ctx, const std::string& file, const std::string& tileChoice,
               std::size_t root, const std::string& svg) {
  const TilingSpec spec = readTiling(file);
  const AnyTile tile = selectTile(tileChoice, spec.colorCount);
  ctx.record = envelope("unfold");
  ctx.record["file"] = file;
  ctx.record["tile"] = tileChoice;
  ctx.record["root"] = root;
  std::visit([&](const auto& t) { reportDomain(ctx, spec, t, root, svg); }, tile);
}

void printSpectrum(Context& ctx, const Spectrum& s) {
  ctx.out << "h = " << sig12(s.h) << ", unknowns = " << s.unknowns << ", solver: " << s.method
          << "\n";
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    ctx.out << "  " << (i + 1) << "  " << sig12(s.eigenvalues[i]) << "  (residual "
            << sci(s.residuals[i]) << ")\n";
  }
}

void cmdSpectrum(Context& ctx, const std::string& file, const Rational& h, std::size_t k,
                 const std::string& csvPath) {
  const auto poly = readPolygon(file);
  const auto spectrum = dirichletEigenvalues(rasterize(poly, h), k);
  printSpectrum(ctx, spectrum);
  if (!csvPath.empty()) {
    std::ofstream csv(csvPath, std::ios::binary);
    if (!csv) fail(ErrorKind::Io, "cannot write " + csvPath);
    csv << "index,eigenvalue\n";
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
      csv << (i + 1) << "," << sig12(spectrum.eigenvalues[i]) << "\n";
    }
    ctx.out << "csv: " << csvPath << "\n";
  }
  ctx.out << kEvidenceFooter << "\n";
  ctx.record = envelope("spectrum");
  ctx.record["file"] = file;
  ctx.record["spectrum"] = spectrumJson(spectrum);
  ctx.record["note"] = kEvidenceFooter;
}

template <class T>
Polygon<T> domainBoundary(const TilingSpec& spec, const BaseTile<T>& tile, std::size_t root,
                          const std::string& name) {
  auto domain = buildDomain(spec, tile, root);
  if (!domain.embedded) {
    fail(ErrorKind::InvalidInput, name + " does not unfold to a simple planar domain");
  }
  return std::move(domain.boundary);
}

void cmdCompare(Context& ctx, const std::string& fileA, const std::string& fileB,
                const std::string& tileChoice, std::size_t root, const Rational& h,
                std::size_t k, const Rational& relTol) {
  const TilingSpec a = readTiling(fileA);
  const TilingSpec b = readTiling(fileB);
  if (a.colorCount != b.colorCount) fail(ErrorKind::InvalidInput, "color counts differ");
  const AnyTile tile = selectTile(tileChoice, a.colorCount);
  const auto [sa, sb] = std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t.vertices.front().x)>;
        const auto pa = domainBoundary(a, t, root, fileA);
        const auto pb = domainBoundary(b, t, root, fileB);
        const T step = spacingAs<T>(h);
        return std::pair{dirichletEigenvalues(rasterize(pa, step), k),
                         dirichletEigenvalues(rasterize(pb, step), k)};
      },
      tile);
  const auto cmp = compareSpectra(sa, sb, relTol.get_d());
  ctx.out << "h = " << sig12(sa.h) << ", k = " << k << ", unknowns " << sa.unknowns << " / "
          << sb.unknowns << "\n"
          << "  i  lambda_A          lambda_B          rel diff\n";
  for (std::size_t i = 0; i < k; ++i) {
    char line[160];
    std::snprintf(line, sizeof line, "  %zu  %-16s  %-16s  %s\n", i + 1,
                  sig12(sa.eigenvalues[i]).c_str(), sig12(sb.eigenvalues[i]).c_str(),
                  sci(cmp.relativeDifferences[i]).c_str());
    ctx.out << line;
  }
  ctx.out << "max rel diff " << sci(cmp.maxRelativeDifference) << " vs tolerance "
          << sci(cmp.relTol) << ": " << (cmp.pass ? "PASS" : "FAIL") << "\n"
          << kEvidenceFooter << "\n";
  ctx.record = envelope("compare");
  ctx.record["fileA"] = fileA;
  ctx.record["fileB"] = fileB;
  ctx.record["a"] = spectrumJson(sa);
  ctx.record["b"] = spectrumJson(sb);
  ctx.record["relativeDifferences"] = cmp.relativeDifferences;
  ctx.record["maxRelativeDifference"] = cmp.maxRelativeDifference;
  ctx.record["relTol"] = cmp.relTol;
  ctx.record["pass"] = cmp.pass;
  ctx.record["note"] = kEvidenceFooter;
  if (!cmp.pass) ctx.exitCode = kVerificationFailed;
}

Json catalogJson(const PairCatalog& catalog) {
  Json out = Json::array();
  for (const auto& e : catalog.entries) {
    out.push_back({{"specA", specJson(e.specA)},
                   {"specB", specJson(e.specB)},
                   {"colorPermutation", e.colorPermutation},
                   {"verdict", verdictName(e.result.verdict)},
                   {"intertwinerDimension", e.result.intertwinerDimension},
                   {"groupOrder", e.groupOrder},
                   {"twoTransitive", e.twoTransitive},
                   {"witness", matrixJson(*e.result.witness)}});
  }
  return out;
}

void cmdSearch(Context& ctx, std::size_t tiles, std::size_t colors, bool modColors,
               std::size_t budget, const std::string& catalogPath) {
  SearchConfig cfg;
  cfg.tileCount = tiles;
  cfg.colorCount = colors;
  cfg.modColorPermutation = modColors;
  cfg.nodeBudget = budget;
  const auto trees = enumerateTreeTilings(cfg);
  const auto catalog = buildPairCatalog(trees.specs, modColors);
  ctx.out << "tree tilings (N=" << tiles << ", r=" << colors << ", "
          << (modColors ? "up to relabeling and color permutation" : "up to relabeling")
          << "): " << trees.specs.size() << "\n"
          << "pairs examined: " << catalog.pairsExamined
          << ", classified exactly: " << catalog.pairsClassified << "\n"
          << "transplantable noncongruent pairs: " << catalog.entries.size() << "\n";
  for (std::size_t n = 0; n < catalog.entries.size(); ++n) {
    const auto& e = catalog.entries[n];
    ctx.out << "  #" << (n + 1) << ": group order " << e.groupOrder
            << (e.twoTransitive ? " (2-transitive)" : "") << ", intertwiner dimension "
            << e.result.intertwinerDimension << "\n";
  }
  const Json entries = catalogJson(catalog);
  if (!catalogPath.empty()) {
    std::ofstream file(catalogPath, std::ios::binary);
    if (!file) fail(ErrorKind::Io, "cannot write " + catalogPath);
    file << entries.dump(2) << "\n";
    ctx.out << "catalog: " << catalogPath << "\n";
  }
  ctx.record = envelope("search");
  ctx.record["tiles"] = tiles;
  ctx.record["colors"] = colors;
  ctx.record["modColors"] = modColors;
  ctx.record["treeCount"] = trees.specs.size();
  ctx.record["nodesVisited"] = trees.nodesVisited;
  ctx.record["pairsExamined"] = catalog.pairsExamined;
  ctx.record["pairsClassified"] = catalog.pairsClassified;
  ctx.record["catalog"] = entries;
}

void cmdVersion(Context& ctx) {
  ctx.out << "drum " << DRUM_VERSION << "\n";
  Json hashes = Json::object();
  const auto root = dataPath("");
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(root)) {
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) ctx.out << "fixtures: none found under " << root.string() << "\n";
  for (const auto& f : files) {
    const auto rel = std::filesystem::relative(f, root).generic_string();
    const auto digest = fingerprint(readTextFile(f));
    ctx.out << "fixture " << rel << " fnv1a64:" << digest << "\n";
    hashes[rel] = "fnv1a64:" + digest;
  }
  ctx.record = envelope("version");
  ctx.record["version"] = DRUM_VERSION;
  ctx.record["fixtures"] = hashes;
}

}  // namespace

std::string fingerprint(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CommandResult run(const std::vector<std::string>& args) {
  Context ctx;
  CLI::App app{"Transplantable isospectral drums: tilings, groups, transplantation, spectra",
               "drum"};
  app.require_subcommand(0, 1);
  bool version = false;
  std::size_t threads = 1;
  app.add_flag("--version", version, "Print version and fixture hashes");
  app.add_option("--threads", threads, "Worker cap")->envname("DRUM_THREADS")->check(
      CLI::PositiveNumber);

  const auto addJson = [&](CLI::App* sub) {
    sub->add_flag("--json", ctx.json, "Emit a JSON record instead of text");
  };
  std::string fileA, fileB, tileChoice = "default", svg, csv, catalogPath;
  std::string hText = "1/64", relTolText = "1/100";
  std::size_t k = 6, root = 0, tiles = 7, colors = 3, budget = 5'000'000;
  std::optional<unsigned> q;
  bool csvTable = false, modColors = true;

  auto* validateCmd = app.add_subcommand("validate", "Check a tiling file");
  validateCmd->add_option("file", fileA, "Tiling file")->required();
  addJson(validateCmd);

  auto* tableCmd = app.add_subcommand("table", "Print the 2-transitive group table");
  tableCmd->add_option("--q", q, "Evaluate family rows at q");
  tableCmd->add_flag("--csv", csvTable, "CSV output");
  addJson(tableCmd);

  auto* classifyCmd = app.add_subcommand("classify", "Decide transplantability of two tilings");
  classifyCmd->add_option("fileA", fileA)->required();
  classifyCmd->add_option("fileB", fileB)->required();
  addJson(classifyCmd);

  auto* unfoldCmd = app.add_subcommand("unfold", "Unfold a tree tiling into the plane");
  unfoldCmd->add_option("file", fileA)->required();
  unfoldCmd->add_option("--tile", tileChoice, "default|regular|file:<poly>")
      ->envname("DRUM_TILE");
  unfoldCmd->add_option("--root", root, "Root tile");
  unfoldCmd->add_option("--svg", svg, "Write an SVG picture");
  addJson(unfoldCmd);

  auto* spectrumCmd = app.add_subcommand("spectrum", "Dirichlet eigenvalues of a polygon");
  spectrumCmd->set_help_flag("--help", "Print this help message and exit");
  spectrumCmd->add_option("file", fileA, "Polygon file")->required();
  spectrumCmd->add_option("--h", hText, "Grid spacing (p/q)")->envname("DRUM_H");
  spectrumCmd->add_option("--k", k, "Number of eigenvalues")->envname("DRUM_K");
  spectrumCmd->add_option("--csv", csv, "Write index,eigenvalue CSV");
  addJson(spectrumCmd);

  auto* compareCmd = app.add_subcommand("compare", "Unfold two tilings and compare spectra");
  compareCmd->set_help_flag("--help", "Print this help message and exit");
  compareCmd->add_option("fileA", fileA)->required();
  compareCmd->add_option("fileB", fileB)->required();
  compareCmd->add_option("--h", hText, "Grid spacing (p/q)")->envname("DRUM_H");
  compareCmd->add_option("--k", k, "Number of eigenvalues")->envname("DRUM_K");
  compareCmd->add_option("--rel-tol", relTolText, "Relative tolerance (p/q)")
      ->envname("DRUM_REL_TOL");
  compareCmd->add_option("--tile", tileChoice, "default|regular|file:<poly>")
      ->envname("DRUM_TILE");
  compareCmd->add_option("--root", root, "Root tile");
  addJson(compareCmd);

  auto* searchCmd = app.add_subcommand("search", "Enumerate tree tilings and catalog pairs");
  searchCmd->add_option("--tiles", tiles, "Tile count N")->required();
  searchCmd->add_option("--colors", colors, "Color count r")->required();
  searchCmd->add_flag("--mod-colors,!--no-mod-colors", modColors,
                      "Identify tilings that differ by a color permutation (default on)");
  searchCmd->add_option("--budget", budget, "Enumeration node budget")
      ->envname("DRUM_NODE_BUDGET");
  searchCmd->add_option("--catalog", catalogPath, "Write the catalog as JSON");
  addJson(searchCmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    CommandResult result;
    result.exitCode = code == 0 ? kOk : kUsageError;
    result.humanText = out.str() + err.str();
    return result;
  }

  const auto chosen = app.get_subcommands();
  const std::string command = chosen.empty() ? "" : chosen.front()->get_name();
  try {
    if (version) {
      cmdVersion(ctx);
    } else if (command.empty()) {
      CommandResult result;
      result.exitCode = kUsageError;
      result.humanText = app.help();
      return result;
    } else if (command == "validate") {
      cmdValidate(ctx, fileA);
    } else if (command == "table") {
      cmdTable(ctx, q, csvTable);
    } else if (command == "classify") {
      cmdClassify(ctx, fileA, fileB);
    } else if (command == "unfold") {
      cmdUnfold(ctx, fileA, tileChoice, root, svg);
    } else if (command == "spectrum") {
      cmdSpectrum(ctx, fileA, parsePositive(hText, "--h"), k, csv);
    } else if (command == "compare") {
      cmdCompare(ctx, fileA, fileB, tileChoice, root, parsePositive(hText, "--h"), k,
                 parsePositive(relTolText, "--rel-tol"));
    } else if (command == "search") {
      cmdSearch(ctx, tiles, colors, modColors, budget, catalogPath);
    }
  } catch (const Error& e) {
    CommandResult result;
    result.exitCode = exitCodeFor(e.kind());
    result.humanText = "error: " + std::string(e.what()) + "\n";
    if (ctx.json) {
      Json record = envelope(version ? "version" : command);
      record["error"] = {{"kind", kindText(e.kind())}, {"message", e.what()}};
      if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        record["error"]["line"] = pe->line();
      }
      result.machineRecord = record.dump(2) + "\n";
    }
    return result;
  } catch (const std::bad_alloc&) {
    return {kResourceError, "error: out of memory\n", ""};
  }

  CommandResult result;
  result.exitCode = ctx.exitCode;
  result.humanText = ctx.out.str();
  if (ctx.json) {
    ctx.record["exitCode"] = ctx.exitCode;
    result.machineRecord = ctx.record.dump(2) + "\n";
  }
  return result;
}

}  // namespace drum::cli
