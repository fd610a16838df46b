//! Named matroids and exhaustive enumeration of small matroids.

use std::sync::OnceLock;

use super::Matroid;
use crate::bits;
use crate::gf::fano_matrix;
use crate::graphic::MultiGraph;

pub fn fano() -> Matroid {
    Matroid::linear(&fano_matrix()).expect("Fano matrix has 7 columns")
}

pub fn fano_dual() -> Matroid {
    fano().dual()
}

fn uniform(r: usize, n: usize) -> Matroid {
    Matroid::uniform(r, n).expect("static parameters")
}

/// Excluded minors for representability over GF(2).
pub fn binary_excluded() -> &'static [Matroid] {
    static LIST: OnceLock<Vec<Matroid>> = OnceLock::new();
    LIST.get_or_init(|| vec![uniform(2, 4)])
}

/// Excluded minors for representability over GF(3).
pub fn ternary_excluded() -> &'static [Matroid] {
    static LIST: OnceLock<Vec<Matroid>> = OnceLock::new();
    LIST.get_or_init(|| vec![uniform(2, 5), uniform(3, 5), fano(), fano_dual()])
}

/// Excluded minors for graphic matroids.
pub fn graphic_excluded() -> &'static [Matroid] {
    static LIST: OnceLock<Vec<Matroid>> = OnceLock::new();
    LIST.get_or_init(|| {
        vec![
            uniform(2, 4),
            fano(),
            fano_dual(),
            MultiGraph::complete(5).cycle_matroid().dual(),
            MultiGraph::complete_bipartite(3, 3).cycle_matroid().dual(),
        ]
    })
}

/// Every matroid on `{0, .., n-1}` (labeled), by brute force over basis
/// families. Ordered by rank, then by the family's bitmask over the
/// lexicographic list of `r`-subsets.
pub fn all_matroids(n: usize) -> Vec<Matroid> {
    assert!(n <= 6, "exhaustive enumeration is limited to n <= 6");
    let mut out = Vec::new();
    for r in 0..=n {
        let subsets = bits::k_subsets(n, r);
        let m = subsets.len();
        let mut member = vec![false; 1 << n];
        for mask in 1u64..1 << m {
            let family: Vec<u32> =
                (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| subsets[i]).collect();
            for &b in &family {
                member[b as usize] = true;
            }
            if exchange_holds(&family, &member) {
                out.push(Matroid::from_bases_unchecked(n, family.clone()));
            }
            for &b in &family {
                member[b as usize] = false;
            }
        }
    }
    out
}

fn exchange_holds(family: &[u32], member: &[bool]) -> bool {
    family.iter().all(|&b1| {
        family.iter().all(|&b2| {
            bits::elements(b1 & !b2).all(|x| {
                bits::elements(b2 & !b1).any(|y| member[((b1 & !(1 << x)) | 1 << y) as usize])
            })
        })
    })
}
