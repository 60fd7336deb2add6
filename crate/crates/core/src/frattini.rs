//! Maximal subrings and the Frattini subring.

use crate::abnormal::enumerate_subrings;
use crate::engel::cartan_subrings_exhaustive;
use crate::error::Result;
use crate::ring::{IdealView, LieRing, SubringView};
use crate::subspace::Subspace;

/// The Frattini subring with its witnesses: the maximal-subring list it was
/// intersected from and the verified ideal/nilpotency flags.
#[derive(Debug, Clone)]
pub struct FrattiniResult {
    pub space: Subspace,
    pub maximal_subrings: Vec<Subspace>,
    pub is_ideal: bool,
    pub is_nilpotent: bool,
}

/// The inclusion-maximal proper subrings.
pub fn maximal_subrings<'g>(g: &'g LieRing, guard: u64) -> Result<Vec<SubringView<'g>>> {
    let all = enumerate_subrings(g, &g.zero_space(), guard)?;
    let proper: Vec<SubringView<'g>> = all.into_iter().filter(|s| !s.space().is_full()).collect();
    Ok(proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| t.dim() > s.dim() && s.space().is_subspace_of(t.space()))
        })
        .cloned()
        .collect())
}

/// Intersection of all maximal subrings. A ring with no proper subring has
/// an empty intersection family, which is taken to be the whole ring.
pub fn frattini(g: &LieRing, guard: u64) -> Result<FrattiniResult> {
    let maximal: Vec<Subspace> = maximal_subrings(g, guard)?
        .into_iter()
        .map(SubringView::into_space)
        .collect();
    let mut space = g.full_space();
    for m in &maximal {
        space = space.intersect(m)?;
    }
    let is_ideal = g.is_ideal_space(&space);
    let is_nilpotent = g.is_bracket_closed(&space) && g.is_nilpotent(&space);
    Ok(FrattiniResult {
        space,
        maximal_subrings: maximal,
        is_ideal,
        is_nilpotent,
    })
}

/// Scan for a proper subring h with Φ(g) + h = g; any such h violates the
/// Frattini non-generation property. Returns the first violation, if any.
pub fn frattini_fact_check(g: &LieRing, guard: u64) -> Result<Option<Subspace>> {
    let phi = frattini(g, guard)?.space;
    for h in enumerate_subrings(g, &g.zero_space(), guard)? {
        if phi.sum(h.space())? == g.full_space() && !h.space().is_full() {
            return Ok(Some(h.into_space()));
        }
    }
    Ok(None)
}

/// For every Cartan subring c of the given ideal (computed exhaustively in
/// the ideal as a ring of its own), check g = I + N_g(c). Returns the first
/// violating c in ambient coordinates, if any.
pub fn frattini_argument_check(
    g: &LieRing,
    ideal: &IdealView<'_>,
    guard: u64,
) -> Result<Option<Subspace>> {
    let sub = g
        .subring(ideal.space().clone())
        .expect("ideals are subrings");
    let (s, basis) = crate::construct::subring_as_ring(g, &sub);
    for c in cartan_subrings_exhaustive(&s, guard)? {
        // Lift c back to ambient coordinates through the basis rows.
        let rows: Vec<Vec<u64>> = c
            .space()
            .basis_rows()
            .iter()
            .map(|coords| {
                let mut v = vec![0u64; g.dim()];
                for (i, &ci) in coords.iter().enumerate() {
                    for j in 0..g.dim() {
                        v[j] = crate::fp::add_m(
                            v[j],
                            crate::fp::mul_m(ci, basis.get(i, j), g.p()),
                            g.p(),
                        );
                    }
                }
                v
            })
            .collect();
        let c_ambient = Subspace::from_rows(g.dim(), g.p(), &rows);
        let n = g.normalizer(&c_ambient);
        if ideal.space().sum(&n)? != g.full_space() {
            return Ok(Some(c_ambient));
        }
    }
    Ok(None)
}
