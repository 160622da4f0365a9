#ifndef POLYAUT_ENDO_HPP
#define POLYAUT_ENDO_HPP

#include <optional>
#include <variant>
#include <vector>

#include "polyaut/matrix.hpp"
#include "polyaut/poly.hpp"

namespace polyaut {

// Tame building blocks for invertible maps. A word [w1, ..., wk] denotes the
// composition w1 o w2 o ... o wk (wk applied to the point first).
struct AffineFactor {
    Matrix mat;                // n x n, invertible
    std::vector<Scalar> shift; // length n
};

struct ElemFactor {
    std::size_t var; // target variable index
    MultiPoly p;     // polynomial in the other variables
};

struct PermFactor {
    std::vector<std::size_t> perm; // coordinate i of the image is x_{perm[i]}
};

using ElementaryFactor = std::variant<AffineFactor, ElemFactor, PermFactor>;

class PolyMap {
public:
    PolyMap(PolyRing ring, std::vector<MultiPoly> coords); // raw map, no word
    static PolyMap identity(const PolyRing& ring);
    static PolyMap from_word(const PolyRing& ring, std::vector<ElementaryFactor> word);
    // validates that the expanded word equals the supplied coordinates
    static PolyMap from_coords_with_word(PolyRing ring, std::vector<MultiPoly> coords,
                                         std::vector<ElementaryFactor> word);

    const PolyRing& ring() const { return ring_; }
    const std::vector<MultiPoly>& coords() const { return coords_; }
    bool has_word() const { return word_.has_value(); }
    const std::vector<ElementaryFactor>& word() const;

    bool is_identity() const;
    bool operator==(const PolyMap& o) const; // coordinate equality
    bool operator!=(const PolyMap& o) const { return !(*this == o); }

    // pullback F*(f) = f o F
    MultiPoly pullback(const MultiPoly& f) const;
    std::vector<Scalar> apply_point(const std::vector<Scalar>& p) const;

private:
    PolyRing ring_;
    std::vector<MultiPoly> coords_;
    std::optional<std::vector<ElementaryFactor>> word_;

    friend PolyMap compose(const PolyMap&, const PolyMap&);
};

// (F o G)(p) = F(G(p)); words concatenate when both are present.
PolyMap compose(const PolyMap& F, const PolyMap& G);

// Inverts a word-built map by reversing the word and inverting each factor.
PolyMap invert(const PolyMap& F);

// d(1..N): max total degree of the coordinates of F^n.
std::vector<long> iterate_degrees(const PolyMap& F, unsigned N);

// true iff h o A = B o h (h must carry a word, witnessing invertibility)
bool verify_conjugacy(const PolyMap& h, const PolyMap& A, const PolyMap& B);

// smallest d <= bound with F^d = Id
std::optional<unsigned long> order_up_to(const PolyMap& F, unsigned long bound);

Matrix jacobian_at(const PolyMap& F, const std::vector<Scalar>& p);
bool is_unipotent(const Matrix& m);

// determinant of the Jacobian as a polynomial (Laplace expansion)
MultiPoly jacobian_det(const PolyMap& F);

PolyMap expand_word(const PolyRing& ring, const std::vector<ElementaryFactor>& word);
ElementaryFactor invert_factor(const PolyRing& ring, const ElementaryFactor& f);

} // namespace polyaut

#endif
