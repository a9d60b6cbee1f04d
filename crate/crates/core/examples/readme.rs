use std::sync::Arc;

use adjoint_kit::{FiniteLattice, LatticeMap};

fn main() -> adjoint_kit::Result<()> {
    let l = Arc::new(FiniteLattice::powerset(&["h", "t"])?);
    let (h, t) = (l.world_set(&["h"])?, l.world_set(&["t"])?);
    let f = LatticeMap::from_generators(&l, &[(h, l.top()), (t, l.top())])?;
    let info = f.right_adjoint()?.right().clone();
    assert_eq!(info.apply(l.top()), l.top());
    assert_eq!(info.apply(h), l.bottom());
    println!("fi(top) = {}, fi(h) = {}", l.name(info.apply(l.top())), l.name(info.apply(h)));
    Ok(())
}
