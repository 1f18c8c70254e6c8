#pragma once

#include "torsionlab/intmat.hpp"
#include "torsionlab/quad.hpp"
#include "torsionlab/sl2.hpp"

#include <vector>

namespace torsionlab {

/// The lattice Λ_m = Sym^m(O_D²) over Z, rank 2(m+1).
/// Basis order: v_0, v_1, ..., v_m with v_j = e1^j e2^(m-j), each O_D
/// coordinate split into (1, w) components in that order; Z-basis index
/// 2j = v_j, 2j+1 = w*v_j.
struct SymPowerLattice {
    unsigned m = 0;
    QuadRing ring;
    SymPowerLattice(unsigned m_, QuadRing r) : m(m_), ring(std::move(r)) {}
    int rank() const { return 2 * (static_cast<int>(m) + 1); }
};

/// (m+1) x (m+1) matrix over O_D of rho_m(M) in the monomial basis
/// (columns are images of v_j).
inline std::vector<std::vector<QuadInt>> rho_matrix_F(const QuadRing& R, const SL2Mat& M, unsigned m) {
    auto powlist = [&](const QuadInt& x, const QuadInt& y, unsigned p) {
        // coefficients of (x e1 + y e2)^p on e1^i e2^(p-i), i = 0..p
        std::vector<QuadInt> cur = {QuadInt(1)};
        for (unsigned k = 0; k < p; ++k) {
            std::vector<QuadInt> nxt(cur.size() + 1);
            for (size_t i = 0; i < cur.size(); ++i) {
                nxt[i] = nxt[i] + mul(R, cur[i], y);
                nxt[i + 1] = nxt[i + 1] + mul(R, cur[i], x);
            }
            cur = std::move(nxt);
        }
        return cur;
    };
    std::vector<std::vector<QuadInt>> out(m + 1, std::vector<QuadInt>(m + 1));
    for (unsigned j = 0; j <= m; ++j) {
        // rho(M) v_j = (a e1 + c e2)^j (b e1 + d e2)^(m-j)
        auto l1 = powlist(M.a, M.c, j);
        auto l2 = powlist(M.b, M.d, m - j);
        std::vector<QuadInt> coeffs(m + 1);
        for (size_t i1 = 0; i1 < l1.size(); ++i1)
            for (size_t i2 = 0; i2 < l2.size(); ++i2)
                coeffs[i1 + i2] = coeffs[i1 + i2] + mul(R, l1[i1], l2[i2]);
        for (unsigned k = 0; k <= m; ++k) out[k][j] = coeffs[k];
    }
    return out;
}

/// Realify an (m+1)x(m+1) O_D-matrix: each entry x = x0 + x1 w becomes the
/// 2x2 multiplication block [[x0, -nm*x1], [x1, x0 + tr*x1]].
inline IntMat realify(const QuadRing& R, const std::vector<std::vector<QuadInt>>& A) {
    int n = static_cast<int>(A.size());
    IntMat out(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const QuadInt& x = A[i][j];
            out(2 * i, 2 * j) = x.a;
            out(2 * i, 2 * j + 1) = -Int(R.nm) * x.b;
            out(2 * i + 1, 2 * j) = x.b;
            out(2 * i + 1, 2 * j + 1) = x.a + Int(R.tr) * x.b;
        }
    return out;
}

/// F-transpose of an O_D block matrix (transposes blocks, not the
/// realified 2x2 cells).
inline std::vector<std::vector<QuadInt>> transpose_F(const std::vector<std::vector<QuadInt>>& A) {
    size_t n = A.size();
    std::vector<std::vector<QuadInt>> out(n, std::vector<QuadInt>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[j][i] = A[i][j];
    return out;
}

/// Integer matrix of rho_m(M) on Λ_m.
inline IntMat rho_action(const QuadRing& R, const SL2Mat& M, unsigned m) {
    return realify(R, rho_matrix_F(R, M, m));
}

/// The paper's dual action: rho_m applied to [[d,-c],[-b,a]]. In the Sym-model
/// identification this acts on Λ_m ≅ Λ_m* and intertwines with rho_m(A)/δ_D.
inline IntMat dual_action(const QuadRing& R, const SL2Mat& M, unsigned m) {
    SL2Mat Md{M.d, -M.c, -M.b, M.a};
    return rho_action(R, Md, m);
}

/// Honest contragredient on Hom_Z(Λ_m, Z) in δ^{-1}O_D-module coordinates over
/// the functional basis: realified F-transpose of rho_m(M^{-1}).
inline IntMat contragredient_action(const QuadRing& R, const SL2Mat& M, unsigned m) {
    SL2Mat Mi{M.d, -M.b, -M.c, M.a};
    return realify(R, transpose_F(rho_matrix_F(R, Mi, m)));
}

/// F-bilinear pairing with the monomial basis {v_j} declared orthonormal
/// (the gt.40 extension used for the spec's pairing operation).
inline QuadRat pairing(const QuadRing& R, unsigned m, const std::vector<QuadRat>& x,
                       const std::vector<QuadRat>& y) {
    if (x.size() != m + 1 || y.size() != m + 1)
        throw std::invalid_argument("pairing: weight mismatch");
    QuadRat s;
    for (size_t j = 0; j <= m; ++j) s = s + mul(R, x[j], y[j]);
    return s;
}

/// Self-duality data (Lemma of the Sym-model): S = rho_m(A)/delta_D carries
/// Λ_m onto Λ_m* ≅ Λ_m/δ_D; its integer matrix is the realified rho_m(A),
/// a signed antidiagonal permutation (determinant ±1).
struct DualityIso {
    IntMat lattice_map;     // realified rho_m(A), the map Λ_m -> Λ_m (delta-scaled target)
    Int det_sign;           // ±1
    bool intertwines = false; // rho*_m(M) S = S rho_m(M) on supplied generators
};

inline SL2Mat duality_A(const QuadRing&) {
    return SL2Mat{QuadInt(0), QuadInt(-1), QuadInt(1), QuadInt(0)};
}

inline DualityIso self_duality(const QuadRing& R, unsigned m, const std::vector<SL2Mat>& generators) {
    DualityIso iso;
    SL2Mat A = duality_A(R);
    iso.lattice_map = rho_action(R, A, m);
    // determinant of a signed antidiagonal block permutation
    IntMat S = iso.lattice_map;
    // compute det via Hermite on a copy tracking sign: for this structured map,
    // use the explicit antidiagonal form: rho(A) v_j = (-1)^(m-j) v_(m-j)
    Int det = 1;
    {
        IntMat c = S;
        // Bareiss would do; the matrix is a signed permutation of the 2(m+1)
        // basis with blocks; det = product of block dets * permutation sign
        int n = c.rows;
        // simple fraction-free determinant
        Int sign = 1;
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int i = col; i < n; ++i)
                if (c(i, col) != 0) { piv = i; break; }
            if (piv < 0) { det = 0; break; }
            if (piv != col) {
                for (int j = 0; j < n; ++j) std::swap(c(piv, j), c(col, j));
                sign = -sign;
            }
            for (int i = col + 1; i < n; ++i)
                while (c(i, col) != 0) {
                    Int q = fdiv(c(i, col), c(col, col));
                    for (int j = col; j < n; ++j) c(i, j) -= q * c(col, j);
                    if (c(i, col) != 0) {
                        for (int j = col; j < n; ++j) std::swap(c(i, j), c(col, j));
                        sign = -sign;
                    }
                }
        }
        if (det != 0) {
            det = sign;
            for (int i = 0; i < n; ++i) det *= c(i, i);
        }
    }
    iso.det_sign = det;
    iso.intertwines = true;
    for (const auto& g : generators) {
        IntMat lhs = mul(dual_action(R, g, m), iso.lattice_map);
        IntMat rhs = mul(iso.lattice_map, rho_action(R, g, m));
        if (!(lhs == rhs)) { iso.intertwines = false; break; }
    }
    return iso;
}

} // namespace torsionlab
