#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsfem/parallel.hpp"

using namespace dsfem;

namespace {

struct EnvGuard {
  std::string old;
  bool had = false;
  EnvGuard() {
    if (const char* v = std::getenv("FEM_THREADS")) {
      had = true;
      old = v;
    }
  }
  ~EnvGuard() {
    if (had) {
      setenv("FEM_THREADS", old.c_str(), 1);
    } else {
      unsetenv("FEM_THREADS");
    }
  }
};

}  // namespace

TEST_SUITE("parallel") {

TEST_CASE("worker count follows FEM_THREADS") {
  EnvGuard guard;
  setenv("FEM_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("FEM_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  setenv("FEM_THREADS", "junk", 1);
  CHECK(worker_count() >= 1);
  unsetenv("FEM_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("every index is visited once") {
  EnvGuard guard;
  for (const char* t : {"1", "4"}) {
    setenv("FEM_THREADS", t, 1);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(1000, [&](int i) { ++hits[i]; });
    for (const auto& h : hits) CHECK(h.load() == 1);
    parallel_for(0, [](int) { FAIL("called on an empty range"); });
  }
}

TEST_CASE("lowest failing index wins") {
  EnvGuard guard;
  setenv("FEM_THREADS", "4", 1);
  try {
    parallel_for(100, [](int i) {
      if (i == 17 || i == 80) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "17");
  }
}

}  // TEST_SUITE
