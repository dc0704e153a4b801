//! Machine-readable output: one self-delimiting JSON record per line, with
//! exact rationals rendered "num/den" and cyclotomic values as {m, coeffs}.
//!
//! Records are built as `serde_json::Value` objects, whose map keys
//! serialize in sorted order, so parsing an emitted line and re-rendering
//! it reproduces the bytes exactly.

use serde_json::{json, Value};

use crate::cyclo::{CycloNum, Rational};
use crate::functor::{ComposeSupport, Decomposition, EssentialReport, SimpleLabel};
use crate::pairs::{is_ddelta, reduce_pair, DiagonalPair, Pair};
use crate::ppring::{SpeciesVector, TRing};
use crate::verify::Failure;

pub fn rational_str(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn cyclo_value(c: &CycloNum) -> Value {
    json!({
        "m": c.modulus(),
        "coeffs": c.coeffs().iter().map(rational_str).collect::<Vec<_>>(),
    })
}

pub fn species_value(v: &SpeciesVector) -> Value {
    Value::Array(v.values.iter().map(cyclo_value).collect())
}

fn label_value(label: &SimpleLabel) -> Value {
    let rep = label.representative();
    json!({
        "p_order": rep.p_subgroup().order(),
        "s_order": rep.elem_order(),
        "span_order": rep.span().order(),
    })
}

pub fn pair_value(index: usize, pair: &Pair) -> Value {
    let red = reduce_pair(pair).expect("reduction of a valid pair");
    json!({
        "record": "pair",
        "index": index,
        "p_order": pair.p_subgroup().order(),
        "p_elements": pair.p_subgroup().elements(),
        "s": pair.elem(),
        "s_order": pair.elem_order(),
        "span_order": pair.span().order(),
        "ddelta": is_ddelta(pair),
        "reduction": {
            "p_order": red.p_subgroup().order(),
            "s_order": red.elem_order(),
            "span_order": red.span().order(),
        },
    })
}

pub fn group_value(ring: &TRing) -> Value {
    let g = ring.group();
    json!({
        "record": "group",
        "name": g.name(),
        "order": g.order(),
        "prime": ring.prime(),
        "classes": g.conjugacy_classes().len(),
        "pair_classes": ring.pairs().len(),
        "modulus": ring.modulus(),
    })
}

pub fn class_value(index: usize, class: &[crate::group::Elem], ring: &TRing) -> Value {
    let g = ring.group();
    json!({
        "record": "class",
        "index": index,
        "rep": class[0],
        "size": class.len(),
        "order": g.elem_order(class[0]),
        "pprime": g.is_pprime_element(class[0], ring.prime()),
    })
}

pub fn idempotent_value(index: usize, terms: usize, species: &SpeciesVector) -> Value {
    json!({
        "record": "idempotent",
        "pair_index": index,
        "terms": terms,
        "species": species_value(species),
    })
}

pub fn block_value(dec: &Decomposition, which: usize) -> Value {
    let (label, idxs) = &dec.blocks[which];
    json!({
        "record": "block",
        "label": label_value(label),
        "pair_indices": idxs,
        "dim": idxs.len(),
    })
}

pub fn simple_dim_value(label: &SimpleLabel, dim: usize) -> Value {
    json!({
        "record": "simple_dim",
        "label": label_value(label),
        "dim": dim,
    })
}

pub fn essential_value(rep: &EssentialReport) -> Value {
    let witness = rep.witness.as_ref().map(|w| {
        json!({
            "p_order": w.p_subgroup().order(),
            "p_elements": w.p_subgroup().elements(),
            "s": w.elem(),
            "s_order": w.elem_order(),
        })
    });
    json!({
        "record": "essential",
        "group": rep.group.name(),
        "order": rep.group.order(),
        "prime": rep.p,
        "nonzero": rep.nonzero,
        "witness": witness,
        "n": rep.n,
        "dimension": rep.dimension,
    })
}

pub fn dpair_value(index: usize, dp: &DiagonalPair) -> Value {
    json!({
        "record": "dpair",
        "index": index,
        "q_order": dp.pair().p_subgroup().order(),
        "t": [dp.t_left(), dp.t_right()],
        "t_order": dp.pair().elem_order(),
        "span_order": dp.pair().span().order(),
    })
}

pub fn compose_value(support: &ComposeSupport, species: &SpeciesVector) -> Value {
    let support_str = match support {
        ComposeSupport::Evaluated { j } => json!({"kind": "evaluated", "j": j}),
        ComposeSupport::SecondProjectionNotFull { order } => {
            json!({"kind": "zero_second_projection", "p2_span_order": order})
        }
        ComposeSupport::NoNormalForm => json!({"kind": "zero_no_normal_form"}),
    };
    json!({
        "record": "compose",
        "support": support_str,
        "species": species_value(species),
    })
}

pub fn failure_value(f: &Failure) -> Value {
    json!({
        "record": "verify_failure",
        "suite": f.suite,
        "group": f.group,
        "prime": f.p,
        "context": f.context,
        "lhs": f.lhs,
        "rhs": f.rhs,
    })
}

pub fn verify_summary_value(suite: &str, max_order: usize, failures: usize) -> Value {
    json!({
        "record": "verify_summary",
        "suite": suite,
        "max_order": max_order,
        "failures": failures,
    })
}

/// Renders one record per line.
pub fn render_lines(records: &[Value]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("serializable record"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    #[test]
    fn rationals_and_cyclos_render_exactly() {
        assert_eq!(rational_str(&rat(1, 2)), "1/2");
        assert_eq!(rational_str(&rat(-3, 6)), "-1/2");
        assert_eq!(rational_str(&rat(4, 1)), "4/1");
        let c = CycloNum::root_of_unity(6, 1).scale(&rat(1, 3));
        let v = cyclo_value(&c);
        assert_eq!(v["m"], 6);
        assert_eq!(v["coeffs"][1], "1/3");
    }

    #[test]
    fn lines_round_trip_byte_identical() {
        let records = vec![
            json!({"record": "pair", "index": 0, "value": "1/2"}),
            cyclo_value(&CycloNum::root_of_unity(12, 5)),
        ];
        let rendered = render_lines(&records);
        let mut rerendered = String::new();
        for line in rendered.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            rerendered.push_str(&serde_json::to_string(&v).unwrap());
            rerendered.push('\n');
        }
        assert_eq!(rendered, rerendered);
    }
}
