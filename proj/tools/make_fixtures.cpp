// Regenerates the JSON fixtures under tests/fixtures.
#include <filesystem>
#include <iostream>

#include "cli/json_io.hpp"
#include "statespace/homotopy.hpp"
#include "statespace/models.hpp"
#include "statespace/random.hpp"

using namespace statespace;
using namespace statespace::cli;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  auto put = [&](const char* name, const Json& j) { write_text_file((dir / name).string(), serialize(j)); };

  put("constant_loop.json", path_to_json(constant_loop(2, 5)));

  Rng rng(3141);
  put("random_loop_3qubit.json", path_to_json(random_loop(rng, 8, 32, 0.3), LatticeSpec({2, 2, 2})));
  put("random_loop_qutrit.json", path_to_json(random_loop(rng, 3, 32, 0.5)));

  put("berry_bundle.json", bundle_to_json(berry_bundle(24, 24, 0)));
  put("monoid_n0.json", monoid_to_json(PresentedMonoid{1, {}}));
  put("monoid_z2.json", monoid_to_json(PresentedMonoid{1, {{Exponents{2}, Exponents{0}}}}));

  ComplexMatrix h = random_hermitian(rng, 4);
  h += 0.5 * identity(4);
  put("hermitian_4.json", matrix_to_json(h));
  put("state_e0.json", matrix_to_json(basis_projector(2, 0)));
  put("state_mixed.json", matrix_to_json(0.5 * identity(2)));
  return 0;
}
