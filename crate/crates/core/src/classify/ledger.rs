use std::collections::BTreeMap;

use serde::Serialize;

/// A cited result that the case analysis assumes rather than verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub key: &'static str,
    pub citation: &'static str,
    pub statement: &'static str,
}

const ENTRIES: &[LedgerEntry] = &[
    LedgerEntry {
        key: "BGNPRW1",
        citation: "BGNPRW1: rank-finiteness and low-rank modular categories",
        statement: "A modular category of rank at most 7 whose simples all have integral dimension, and whose S-matrix columns fall into the Galois orbits forced by the equivariantization, is pointed.",
    },
    LedgerEntry {
        key: "BN1",
        citation: "BN1: dimension and duality facts for low-rank premodular categories",
        statement: "With Müger center Rep(S3) and a de-equivariantization whose nontrivial simple is fixed by a transposition, the dimensions are (1,1,2,3,3) and both dimension-3 simples are self-dual.",
    },
    LedgerEntry {
        key: "BNRW2",
        citation: "BNRW2: classification of rank-5 modular categories",
        statement: "Every rank-5 modular category is Grothendieck equivalent to SU(2)_4, SU(2)_9/Z2, SU(5)_1 or SU(3)_4/Z3, up to Galois conjugation.",
    },
    LedgerEntry {
        key: "BPR1",
        citation: "BPR1: realizations of metaplectic-type premodular categories",
        statement: "The premodular datum with Rep(D14) fusion rules and T = (1,1,ζ7^6,ζ7^3,ζ7^5) is realized by a premodular category.",
    },
    LedgerEntry {
        key: "Brug",
        citation: "Brug: modularization of premodular categories",
        statement: "A premodular category with Tannakian Müger center Rep(G) de-equivariantizes to a modular category of dimension dim C / |G| carrying a braided G-action, and equivariantization inverts this.",
    },
    LedgerEntry {
        key: "D1",
        citation: "D1: Deligne, Catégories tensorielles",
        statement: "A symmetric fusion category is Rep(G, z) for a finite group G and central z of order at most 2; with all twists equal to 1 it is Tannakian, Rep(G).",
    },
    LedgerEntry {
        key: "EGO1",
        citation: "EGO1: fusion categories of dimension pq",
        statement: "An integral fusion category of dimension pq with p, q prime is group-theoretical; a braided one with dimensions (1,1,1,3,3) has the Grothendieck ring of Rep(Z7:Z3).",
    },
    LedgerEntry {
        key: "ENO1",
        citation: "ENO1: Etingof, Nikshych, Ostrik, On fusion categories",
        statement: "The dimension of a fusion subcategory divides the global dimension, and a fusion category of integer dimension has every simple of dimension the square root of an integer.",
    },
    LedgerEntry {
        key: "GN2/DGNO1",
        citation: "GN2/DGNO1: nilpotent fusion categories; braided fusion categories",
        statement: "For a braided fusion category the universal grading group is dual to the invertibles of the centralizer of the adjoint subcategory, and all components of a faithful grading have the same dimension.",
    },
    LedgerEntry {
        key: "GalindoCommunication",
        citation: "GalindoCommunication: private communication",
        statement: "Fib carries no braided action of Z2xZ2 whose equivariantization is a rank-5 premodular category with Müger center Rep(Z2xZ2).",
    },
    LedgerEntry {
        key: "NR1",
        citation: "NR1: Naidu, Rowell, a finiteness property for braided fusion categories",
        statement: "A braided fusion category with the fusion constraints of these branches is Grothendieck equivalent to Rep(D8), respectively Rep(D14).",
    },
    LedgerEntry {
        key: "RSW1",
        citation: "RSW1: Rowell, Stong, Wang, on classification of modular tensor categories",
        statement: "A rank-4 modular category whose simples pair up under a Z2-action with equal dimensions is, at the level of fusion rules, pointed, Fib⊠Fib or Fib⊠Sem; rank-2 modular categories are the semion and Fibonacci types.",
    },
    LedgerEntry {
        key: "S1",
        citation: "S1: Siehler, braided near-group categories",
        statement: "A braided near-group category with group G and multiplicity n > 0 has G trivial or n = |G| − 1 with G = Z2 or Z3; with n = 0 (Tambara–Yamagami) G is an elementary abelian 2-group.",
    },
];

/// Read-only map from ledger key to citation and statement.
#[derive(Clone, Debug)]
pub struct ExternalFactLedger {
    entries: BTreeMap<&'static str, LedgerEntry>,
}

impl ExternalFactLedger {
    pub fn standard() -> Self {
        ExternalFactLedger { entries: ENTRIES.iter().map(|e| (e.key, *e)).collect() }
    }

    pub fn get(&self, key: &str) -> Option<&LedgerEntry> {
        self.entries.get(key)
    }

    pub fn keys(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Whether the near-group fusion rules (group of order `group_order`, elementary abelian 2-group
/// or not, multiplicity `n`) pass the braiding criterion of ledger entry S1.
pub fn near_group_braidable(group_order: usize, elementary_abelian_2: bool, group_label: &str, n: u32) -> bool {
    if n == 0 {
        return elementary_abelian_2;
    }
    group_order == 1 || (n as usize + 1 == group_order && (group_label == "Z2" || group_label == "Z3"))
}
