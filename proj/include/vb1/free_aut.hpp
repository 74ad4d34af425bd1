#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vb1/free_group.hpp"
#include "vb1/matrix.hpp"
#include "vb1/perm.hpp"

namespace vb1 {

// Bound on the summed image length of a composed automorphism.
inline constexpr std::size_t kDefaultWordLengthCap = 20'000'000;

// Endomorphism of a free group given by generator images, optionally with
// the images of a certified inverse.
class FreeAut {
 public:
  FreeAut() = default;
  static FreeAut identity(std::size_t rank);
  explicit FreeAut(std::vector<FreeWord> images);
  // Throws InvalidArgument unless both composites are the identity.
  FreeAut(std::vector<FreeWord> images, std::vector<FreeWord> inverse_images);

  std::size_t rank() const { return images_.size(); }
  const FreeWord& image(std::size_t g) const { return images_.at(g); }
  const std::vector<FreeWord>& images() const { return images_; }
  bool certified() const { return !inverse_images_.empty() || images_.empty(); }
  const std::vector<FreeWord>& inverse_images() const { return inverse_images_; }

  // Throws InvalidArgument when no inverse is certified.
  FreeAut inverse() const;
  // Throws InvalidArgument when w uses generators beyond the rank.
  FreeWord apply(const FreeWord& w) const;
  std::vector<Letter> apply_letters(const std::vector<Letter>& w) const;
  // f^m; negative m needs a certified inverse.  Throws ComputationError when
  // the images outgrow length_cap letters in total.
  FreeAut power(long long m, std::size_t length_cap = kDefaultWordLengthCap) const;

  bool is_identity() const;
  // Column j holds the exponent sums of the image of generator j.
  IntMatrix abelianized() const;
  std::size_t total_length() const;

  // Images of the generators under phi o f, phi given by one permutation per
  // generator acting on the right.
  std::vector<Perm> pull_back(const std::vector<Perm>& phi) const;

  friend bool operator==(const FreeAut& a, const FreeAut& b) { return a.images_ == b.images_; }
  friend FreeAut compose(const FreeAut& a, const FreeAut& b, std::size_t length_cap);

 private:
  std::vector<FreeWord> images_;
  std::vector<FreeWord> inverse_images_;
};

// compose(a, b) = a o b: the right factor acts first.  Throws
// ComputationError when the images outgrow length_cap letters in total or
// one image exceeds 16 * length_cap letters before free reduction.
FreeAut compose(const FreeAut& a, const FreeAut& b, std::size_t length_cap = kDefaultWordLengthCap);

// Certifies an endomorphism by greedy Nielsen reduction of its images to a
// signed permutation of the generators.  Empty when the reduction stalls.
std::optional<FreeAut> certify_automorphism(const FreeAut& f);

// Right action of a word on a sheet, phi(g) acting on the right.
Perm::Point act(const std::vector<Perm>& phi, Perm::Point p, const std::vector<Letter>& w);
Perm word_permutation(const std::vector<Perm>& phi, const std::vector<Letter>& w, std::size_t degree);

// ---- The k-punctured torus --------------------------------------------
//
// pi_1 = F(x, y, z1, ..., z_{k-1}).  Boundary words: beta_j = z_j for
// j < k and beta_k = Z_{k-1} ... Z_1 x y X Y.  Puncture indices are 0-based
// in this interface.

Alphabet surface_alphabet(std::size_t k = 1);
std::vector<FreeWord> surface_boundary_words(std::size_t k = 1);

// Dehn twists about x and y, extended by the identity on the z's:
// Dx: y -> y x; Dy: x -> x Y.
FreeAut twist_x(std::size_t k = 1);
FreeAut twist_y(std::size_t k = 1);
// Twist about a curve enclosing all punctures: z_j -> c z_j C, c = [x,y].
FreeAut twist_all_punctures(std::size_t k);
// Full twist of punctures j and j+1 (1-based, 1 <= j <= k-2):
// z_j -> w z_j W, z_{j+1} -> w z_{j+1} W with w = z_j z_{j+1}.
FreeAut twist_adjacent_punctures(std::size_t k, std::size_t j);

// Parses a word in Dx, Dy, B, A1, ..., each optionally raised to ^k, for
// the k-punctured torus.  "Dx Dy^4" is Dx o Dy^4.  "id" is the identity.
FreeAut parse_twist_word(std::string_view text, std::size_t k = 1);

// For each puncture j, the puncture whose boundary word is conjugate to
// f(beta_j) up to inversion (with the sign), or nothing.
struct PunctureImage {
  std::size_t puncture;
  bool inverted;
};
std::vector<std::optional<PunctureImage>> puncture_action(const FreeAut& f, std::size_t k);
// f maps each beta_j to a conjugate of beta_j or its inverse.
bool fixes_punctures(const FreeAut& f, std::size_t k);

// Lines "y -> y x" (or separated by ';').  Generators that are not listed
// map to themselves.  The result is certified by Nielsen reduction; throws
// ParseError on malformed text and InvalidArgument when not invertible.
FreeAut parse_automorphism(std::string_view text, const Alphabet& alphabet);
std::string format_automorphism(const FreeAut& f, const Alphabet& alphabet);

}  // namespace vb1
