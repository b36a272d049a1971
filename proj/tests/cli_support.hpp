#pragma once

// Helpers shared by the CLI tests and the acceptance binary: run the specseq
// executable and replay the golden corpus against it.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cli {

struct Result {
  int exit_code = -1;
  std::string out;
};

inline std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// Runs `bin args` inside dir with stdout captured and stderr discarded unless
// merge_stderr is set.
inline Result run(const std::string& bin, const std::string& args, const std::string& dir = ".",
                  bool merge_stderr = false) {
  std::string cmd = "cd " + quote(dir) + " && " + quote(bin) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ManifestEntry {
  std::string file;
  std::string args;
};

inline std::vector<ManifestEntry> manifest(const std::string& dir) {
  std::vector<ManifestEntry> out;
  std::ifstream in(std::filesystem::path(dir) / "MANIFEST");
  std::string line;
  while (std::getline(in, line)) {
    auto sp = line.find(' ');
    if (line.empty() || sp == std::string::npos) continue;
    out.push_back({line.substr(0, sp), line.substr(sp + 1)});
  }
  return out;
}

struct GoldenSummary {
  int documents = 0;
  int bicomplexes = 0;
  int page_runs = 0;
  std::vector<std::string> failures;
};

// For every manifest entry: regeneration and re-emission are byte-identical
// to the stored file, and for complexes the page tables up to max_r are
// deterministic and agree across all routes.
inline GoldenSummary replay_golden(const std::string& bin, const std::string& dir, int max_r = 4) {
  GoldenSummary s;
  for (const auto& e : manifest(dir)) {
    ++s.documents;
    const auto stored = slurp(std::filesystem::path(dir) / e.file);
    auto gen = run(bin, "gen " + e.args, dir);
    if (gen.exit_code != 0 || gen.out != stored) s.failures.push_back(e.file + ": regeneration differs");
    auto emit = run(bin, "emit " + quote(e.file), dir);
    if (emit.exit_code != 0 || emit.out != stored) s.failures.push_back(e.file + ": re-emission differs");

    const bool bi = stored.find("\"kind\": \"bicomplex\"") != std::string::npos;
    const bool fil = stored.find("\"kind\": \"filtered\"") != std::string::npos;
    if (!bi && !fil) continue;
    s.bicomplexes += bi;
    const std::string pages = "pages " + quote(e.file) + " --r 0 --all-upto " + std::to_string(max_r);
    auto direct = run(bin, pages + " --route direct", dir);
    auto again = run(bin, pages + " --route direct", dir);
    s.page_runs += 2;
    if (direct.exit_code != 0 || again.out != direct.out) s.failures.push_back(e.file + ": pages not deterministic");
    if (!bi) continue;
    for (const char* route : {"witness", "tot"}) {
      auto other = run(bin, pages + " --route " + route, dir);
      ++s.page_runs;
      if (other.exit_code != 0 || other.out != direct.out)
        s.failures.push_back(e.file + ": route " + route + " disagrees with direct");
    }
  }
  if (s.documents == 0) s.failures.push_back("empty or missing MANIFEST in " + dir);
  return s;
}

}  // namespace cli
