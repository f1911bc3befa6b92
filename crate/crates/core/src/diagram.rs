//! Compatible families over a finite diagram of finite sets.

use crate::budget::Meter;
use crate::error::Result;

/// All tuples `t` with `t[k] < sizes[k]` such that `table[t[source]] == t[target]`
/// for every arrow `(source, target, table)`, in lexicographic order.
pub(crate) fn compatible_tuples(
    sizes: &[usize],
    arrows: &[(usize, usize, &[usize])],
    meter: &mut Meter,
) -> Result<Vec<Vec<usize>>> {
    let n = sizes.len();
    // Visit objects so that forced values are propagated as early as possible.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let forced = (0..n).find(|&k| !placed[k] && arrows.iter().any(|&(s, t, _)| t == k && placed[s]));
        let next = forced
            .or_else(|| (0..n).find(|&k| !placed[k] && !arrows.iter().any(|&(s, t, _)| t == k && !placed[s] && s != k)))
            .or_else(|| (0..n).find(|&k| !placed[k]))
            .expect("an unplaced object exists");
        placed[next] = true;
        order.push(next);
    }
    let mut pos = vec![0; n];
    for (p, &k) in order.iter().enumerate() {
        pos[k] = p;
    }
    let mut out = Vec::new();
    let mut tuple = vec![usize::MAX; n];
    rec(0, &order, &pos, sizes, arrows, &mut tuple, &mut out, meter)?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn rec(
    p: usize,
    order: &[usize],
    pos: &[usize],
    sizes: &[usize],
    arrows: &[(usize, usize, &[usize])],
    tuple: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    meter: &mut Meter,
) -> Result<()> {
    if p == order.len() {
        out.push(tuple.clone());
        return Ok(());
    }
    meter.tick()?;
    let k = order[p];
    let forced = arrows.iter().find(|&&(s, t, _)| t == k && pos[s] < p).map(|&(s, _, tab)| tab[tuple[s]]);
    let candidates: Vec<usize> = match forced {
        Some(v) => vec![v],
        None => (0..sizes[k]).collect(),
    };
    for v in candidates {
        tuple[k] = v;
        let ok = arrows.iter().all(|&(s, t, tab)| {
            let involved = s == k || t == k;
            let assigned = pos[s] <= p && pos[t] <= p;
            !involved || !assigned || tab[tuple[s]] == tuple[t]
        });
        if ok {
            rec(p + 1, order, pos, sizes, arrows, tuple, out, meter)?;
        }
    }
    tuple[k] = usize::MAX;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    #[test]
    fn pullback_of_sets() {
        let f = [0usize, 1, 1];
        let g = [1usize, 0];
        let t = compatible_tuples(&[3, 2, 2], &[(0, 2, &f), (1, 2, &g)], &mut Meter::new(Budget::default(), "test")).unwrap();
        assert_eq!(t, vec![vec![0, 1, 0], vec![1, 0, 1], vec![2, 0, 1]]);
    }

    #[test]
    fn cyclic_diagram() {
        let swap = [1usize, 0];
        let t = compatible_tuples(&[2], &[(0, 0, &swap)], &mut Meter::new(Budget::default(), "test")).unwrap();
        assert!(t.is_empty());
    }
}
