//! JSON views of core values.

use fibrifold_core::atlas::{CatalogEntry, Table};
use fibrifold_core::realization::{Fingerprint, Level, SpaceGroup};
use serde_json::{json, Map, Value};

/// Rows as objects keyed by column.
pub fn table(t: &Table) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            let m: Map<String, Value> =
                t.columns.iter().zip(r).map(|(c, v)| (c.to_string(), Value::String(v.clone()))).collect();
            Value::Object(m)
        })
        .collect();
    Value::Array(rows)
}

/// Generators as matrix and translation, entries of the translation as
/// exact `p/q` strings.
pub fn group(g: &SpaceGroup, point_group: &str) -> Value {
    let gens: Vec<Value> = g.export().into_iter().map(|(m, v)| json!({ "matrix": m, "vector": v })).collect();
    json!({ "label": g.label, "point_group": point_group, "generators": gens })
}

fn level(l: &Level) -> Value {
    json!({
        "n": l.n,
        "order": l.order,
        "orders": l.orders,
        "improper": l.improper,
        "classes": l.classes.iter().map(|((d, t), o, size, count)| json!({
            "det": d, "trace": t, "order": o, "size": size, "count": count,
        })).collect::<Vec<_>>(),
        "derived_order": l.derived_order,
        "abelian_orders": l.abelian_orders,
    })
}

pub fn fingerprint(f: &Fingerprint) -> Value {
    json!({
        "point_group": f.point_group,
        "levels": f.levels.iter().map(level).collect::<Vec<_>>(),
        "subgroups": f.subgroups.iter().map(fingerprint).collect::<Vec<_>>(),
    })
}

pub fn entry(e: &CatalogEntry) -> Value {
    json!({
        "it_number": e.it_number,
        "it_label": e.it_label,
        "primary_name": e.primary_name,
        "secondary_names": e.secondary_names,
        "point_group": e.point_group,
        "enantiomorphous": e.enantiomorphous,
        "irreducible": e.irreducible,
        "rule": e.rule.map(|r| format!("{r:?}")),
    })
}
