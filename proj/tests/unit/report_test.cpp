#include "ffmean/report.hpp"
#include "ffmean/parallel.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ffmean;

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ULL);
}

TEST(CsvTable, LayoutAndDeterminism) {
  CsvTable t("{\"x\":1}", {{"tol_rel", 1e-6}}, "a,b");
  t.add_row("1,2");
  t.add_row("3,4");
  const std::string s = t.str();
  EXPECT_EQ(s.rfind("# ffmean ", 0), 0u);
  EXPECT_NE(s.find("tol_rel=1e-06"), std::string::npos);
  EXPECT_NE(s.find("\na,b\n1,2\n3,4\n"), std::string::npos);
  CsvTable u("{\"x\":1}", {{"tol_rel", 1e-6}}, "a,b");
  u.add_row("1,2");
  u.add_row("3,4");
  EXPECT_EQ(u.str(), s);
  CsvTable v("{\"x\":2}", {{"tol_rel", 1e-6}}, "a,b");
  EXPECT_NE(v.str().substr(0, 40), s.substr(0, 40));
}

TEST(WriteAtomic, ReplacesFileAndLeavesNoTemp) {
  const std::string path = ::testing::TempDir() + "ffmean_report.csv";
  write_atomic(path, "old\n");
  write_atomic(path, "new\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "new\n");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove(path);
}

TEST(ParallelFor, CoversRangeOnce) {
  for (std::size_t n : {0u, 1u, 7u, 1000u}) {
    std::vector<std::atomic<int>> hits(n);
    parallel_for(n, 0, [&](std::size_t b, std::size_t e, std::size_t) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(10, 5, [](std::size_t b, std::size_t, std::size_t) {
                 if (b >= 4) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(ParallelFor, ThreadEnv) {
  setenv("FFMEAN_THREADS", "3", 1);
  EXPECT_EQ(thread_count(), 3u);
  setenv("FFMEAN_THREADS", "junk", 1);
  EXPECT_GE(thread_count(), 1u);
  unsetenv("FFMEAN_THREADS");
}

TEST(FmtDouble, RoundTripsAndDropsNegativeZero) {
  EXPECT_EQ(fmt_double(-0.0), "0");
  EXPECT_EQ(fmt_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(fmt_double(1.0 / 3.0)), 1.0 / 3.0);
}
