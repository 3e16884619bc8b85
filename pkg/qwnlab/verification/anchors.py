# verification/anchors.py
"""Statements the verification suites exercise, keyed by a stable slug."""

ANCHORS = {
    # Kernels and second quantization
    'kernel-theorem': "Kernels and operators correspond through the kernel theorem",
    'kernel-convolution': "Convolution of kernels is bilinear and matches operator composition",
    'wiener-ito-action': "Action of an integral kernel operator on Wiener-Ito coefficients",
    'second-quantization': "Second quantization acts as T on every tensor slot and maps exponential vectors",
    'differential-second-quantization': "Differential second quantization of an operator with kernel k is the conservation operator of k",
    'exponential-vectors': "Exponential vectors, their norm and the annihilation eigenvalue relation",
    'number-operator': "Number operator multiplies the n-particle sector by n",
    'gross-laplacian': "Gross Laplacian is the sum of squared annihilators",
    # Rotations
    'skew-generator-kernel': "A skew generator X has kernel X/2 in the bilinear pairing",
    'rotation-generator': "Second-quantized rotation flows are generated by twice the conservation operator of a skew kernel",
    'rotation-invariance': "Number operator, Gross Laplacian and Euler operator are rotation invariant",
    # Creation, annihilation and derivatives
    'annihilation-creation-operators': "a(f) and a*(f) as kernel operators of order one",
    'qwn-derivatives': "Creation and annihilation derivatives as commutators with a(z) and a*(z)",
    'conservation-operator': "Conservation operator of S as the (1,1) kernel operator",
    'generalized-gross-laplacian': "Generalized Gross Laplacian of S as the (0,2) kernel operator",
    'derivatives-of-quadratic-operators': "Derivatives of the conservation operator and of the generalized Gross Laplacian",
    'iterated-derivatives': "Iterated derivatives bracket against the operator itself",
    # Commutation relations
    'canonical-commutation-relations': "Canonical commutation relations of the mode operators",
    'generalized-ccr': "[a(y), a*(x)] equals the pairing of y and x times the identity",
    'basic-commutation-relations': "Seven commutation relations among a, a*, N, the Gross Laplacian and pure annihilation operators",
    'conservation-commutator': "Commutator of two conservation operators is the conservation operator of the kernel commutator",
    'annihilation-commute': "Pure annihilation kernel operators commute",
    'commutator-product-identity': "[AB, CD] expands into four single commutators",
    'gross-conservation-commutator': "[Xi_02(l), Xi_11(k)] = Xi_02(l*k) + Xi_02(l^T*k)",
    'gross-laplacian-conservation': "[Gross Laplacian, Xi_11(k)] = 2 Xi_02(k)",
    'skew-gross-conservation': "[Xi_02(k), Xi_11(k)] vanishes for skew k",
    'rotation-operator-kernel': "Rotation operator of a skew kernel is twice its conservation operator",
    'skew-orbit-commutations': "Ten commutation relations along the orbit of a skew S",
    # Lie algebras
    'five-dimensional-solvable': "Id, a(z), a*(z), N and the Gross Laplacian span a five-dimensional non-nilpotent solvable algebra",
    'pure-annihilation-solvable': "N with n pure annihilation operators spans an (n+1)-dimensional non-nilpotent solvable algebra",
    'rotation-orbit-algebra': "The algebra generated along the orbit of a skew S is non-nilpotent and solvable",
    'orbit-finite-dimension': "Finite rank or eigenvector orbits give finite-dimensional algebras",
    'ideals-contain-identity': "Nonzero ideals avoiding the generalized Gross Laplacian contain the identity",
    'not-semisimple': "The orbit algebra is not semisimple",
    'fixed-point-algebra': "Fixed-point data generate a six-dimensional non-solvable *-algebra",
    'normal-ordering': "Normal-ordered products agree with the Fock realization",
}
