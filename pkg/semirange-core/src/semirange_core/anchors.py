from enum import StrEnum


class Anchor(StrEnum):
    """The mathematical statement each verification check exercises."""

    # Context and reduction
    PSEUDO_INVERSE = "A+A = (A^1/2)+A^1/2 = P, AP = A"
    INTERTWINING = "Z_A T = T~ Z_A"
    NORM_REDUCTION = "||T||_A = ||T~||"
    MULTIPLICATIVE = "(TS)~ = T~ S~"
    SELFADJOINT_REDUCTION = "T A-self-adjoint <=> T~ self-adjoint"
    NILPOTENT_REDUCTION = "T A-nilpotent of index k <=> T~ nilpotent of index k"
    SHARP_ADJOINT = "<Tx,y>_A = <x,T#y>_A for T in B_A"

    # Spectra
    POINT_SPECTRUM = "A-point spectrum = eigenvalues of T~"
    A_INVERTIBILITY = "lambda in A-spectrum <=> T - lambda I not A-invertible"
    SPECTRAL_RADIUS = "r_A(T) = lim ||T^n||_A^(1/n)"
    NILPOTENT_SPECTRUM = "A-nilpotent T has A-spectrum {0}"
    SHARP_NILPOTENT = "T A-nilpotent of index k <=> T# A-nilpotent of index k"

    # Numerical ranges
    SPECTRAL_INCLUSION = "q * A-spectrum inside W_qA(T)"
    RANGE_INCLUSION = "q * W_A(T) inside W_qA(T) when dim R(A) >= 3"
    REDUCED_RANGE = "W_qA(T) = W_q(T~)"
    DISK_UNION = "W_qA(T) = union of disks about q<Tx,x>_A of radius sqrt(1-|q|^2) alpha(x)"
    PAIR_FORM = "W_qA(T) = {q<Tx,x>_A + sqrt(1-|q|^2)<Tx,z>_A : x, z A-orthonormal}"
    PAIR_RADIUS = "w_qA(T) = sup |q||<Tx,x>_A| + sqrt(1-|q|^2)|<Tx,z>_A| over A-orthonormal x, z"
    PAIR_COMPLETION = "<x,z>_A = 0, ||z||_A = 1, y = conj(q) x + sqrt(1-|q|^2) z gives <x,y>_A = q"
    UNIMODULAR_COLLAPSE = "|q| = 1: W_qA(T) = q W_A(T)"
    UNITARY_INVARIANCE = "W_qA(UTU#) = W_qA(T) for A-unitary U"
    ELLIPSE = "A-self-adjoint T: W_qA(T) is the elliptic disk with foci q lambda_1, q lambda_m"
    CIRCULAR_Q0 = "W_0A(T) is a disk centred at 0"
    POWER_LIMIT = "lim w_qA(T^n)^(1/n) = r_A(T)"

    # Radius bounds
    BOUND_CHAIN = "|q|/2 ||T||_A <= w_qA(T) <= ||T||_A"
    WA_LOWER = "|q| w_A(T) <= w_qA(T)"
    SELFADJOINT_LOWER = "A-self-adjoint T: |q| ||T||_A <= w_qA(T)"
    NILPOTENT2_BOUND = "A-nilpotent index 2: w_qA(T) <= (1+sqrt(1-|q|^2))/2 ||T||_A"
    NILPOTENT2_DISK = "A-nilpotent index 2: W_qA(T) is a disk centred at 0"
    HALF_NORM = "A-nilpotent index 2: w_A(T) = ||T||_A / 2"
    REFINEMENT = "(1+sqrt(1-q^2))/2 <= (1 - 3q^2/4 + q sqrt(1-q^2))^(1/2)"
    SQUARE_ZERO = "w_q([[0,S],[0,0]]) = (1+sqrt(1-q^2))/2 ||S|| for self-adjoint S"
    INDEX3 = "w_q([[0,S1,0],[0,0,S2],[0,0,0]]) <= index-3 bound"
    INDEX3_CONTINUITY = "index-3 bound continuous at |q| = 1/sqrt(2)"
