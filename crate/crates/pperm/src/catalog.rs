//! Built-in groups, cycle-notation parsing, and group ingestion from files.
//!
//! The named catalog covers the verification universe: cyclic groups,
//! dihedral groups, symmetric groups up to degree 4, Q8, elementary abelian
//! groups, and two semidirect products with faithful p'-actions.

use std::path::Path;

use serde_json::Value;

use crate::group::{Elem, Group, GroupMap, GroupRef, ProductGroup, Subgroup};
use crate::{Error, Result};

pub fn cyclic(n: usize) -> Result<GroupRef> {
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = (i + j) % n;
        }
    }
    Group::from_table(format!("C{}", n), &table)
}

/// Dihedral group of the given (even) order.
pub fn dihedral(order: usize) -> Result<GroupRef> {
    if !order.is_multiple_of(2) || order < 2 {
        return Err(Error::Format {
            msg: format!("dihedral order must be even and positive, got {}", order),
        });
    }
    let n = order / 2;
    let rot: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
    Group::from_permutation_generators(format!("D{}", order), n, &[rot, refl])
}

pub fn symmetric(n: usize) -> Result<GroupRef> {
    if n == 0 || n > 4 {
        return Err(Error::Format {
            msg: format!("symmetric group degree must be 1..=4, got {}", n),
        });
    }
    if n == 1 {
        return cyclic(1);
    }
    let cycle: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    Group::from_permutation_generators(format!("S{}", n), n, &[cycle, swap])
}

pub fn alternating4() -> Result<GroupRef> {
    // (1 2 3) and (2 3 4)
    Group::from_permutation_generators("A4", 4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]])
}

pub fn quaternion8() -> Result<GroupRef> {
    // left multiplications by i and j on (1, i, j, k, -1, -i, -j, -k)
    let li = vec![1, 4, 3, 6, 5, 0, 7, 2];
    let lj = vec![2, 7, 4, 1, 6, 3, 0, 5];
    Group::from_permutation_generators("Q8", 8, &[li, lj])
}

pub fn elementary_abelian(p: usize, rank: u32) -> Result<GroupRef> {
    let mut g = cyclic(p)?;
    let base = cyclic(p)?;
    let mut name = format!("C{}", p);
    for _ in 1..rank {
        g = ProductGroup::new(&g, &base)?.group;
        name = format!("{}xC{}", name, p);
    }
    if rank > 1 {
        // re-wrap to carry the flat name
        let n = g.order();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| g.mul(i as Elem, j as Elem) as usize).collect())
            .collect();
        g = Group::from_table(name, &table)?;
    }
    Ok(g)
}

/// Semidirect product P x| C_n for an automorphism alpha of P with
/// alpha^n = id; element (x, a^i) gets identifier i*|P| + x.
pub fn semidirect(p: &GroupRef, n: usize, alpha: &GroupMap, name: impl Into<String>) -> Result<GroupRef> {
    let po = p.order();
    // alpha^i for i in 0..n
    let mut powers: Vec<Vec<Elem>> = vec![(0..po as Elem).collect()];
    for i in 1..n {
        let prev = &powers[i - 1];
        powers.push((0..po as Elem).map(|x| alpha.apply(prev[x as usize])).collect());
    }
    let last: Vec<Elem> = (0..po as Elem)
        .map(|x| alpha.apply(powers[n - 1][x as usize]))
        .collect();
    if last != powers[0] {
        return Err(Error::Format {
            msg: format!("action does not have order dividing {}", n),
        });
    }
    let order = po * n;
    let mut table = vec![vec![0usize; order]; order];
    for i in 0..n {
        for x in 0..po {
            let a = i * po + x;
            for j in 0..n {
                for y in 0..po {
                    let b = j * po + y;
                    let xy = p.mul(x as Elem, powers[i][y]) as usize;
                    table[a][b] = ((i + j) % n) * po + xy;
                }
            }
        }
    }
    Group::from_table(name, &table)
}

fn c3_by_c4() -> Result<GroupRef> {
    let c3 = cyclic(3)?;
    let full = Subgroup::full(&c3);
    let inv = GroupMap::new(full.clone(), full, vec![0, 2, 1])?;
    semidirect(&c3, 4, &inv, "C3:C4")
}

fn c7_by_c3() -> Result<GroupRef> {
    let c7 = cyclic(7)?;
    let full = Subgroup::full(&c7);
    // x -> x^2 has order 3 on C7
    let images: Vec<Elem> = (0..7).map(|x| ((x * 2) % 7) as Elem).collect();
    let sq = GroupMap::new(full.clone(), full, images)?;
    semidirect(&c7, 3, &sq, "C7:C3")
}

/// The named catalog used as the default verification universe.
pub fn catalog_names() -> Vec<&'static str> {
    vec![
        "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "S3", "D8", "Q8", "A4", "S4",
        "C3:C4", "C7:C3",
    ]
}

pub fn by_name(name: &str) -> Result<GroupRef> {
    match name {
        "trivial" | "C1" => cyclic(1),
        "C2xC2" => elementary_abelian(2, 2),
        "C2xC2xC2" => elementary_abelian(2, 3),
        "C3xC3" => elementary_abelian(3, 2),
        "S2" => symmetric(2),
        "S3" => symmetric(3),
        "S4" => symmetric(4),
        "A4" => alternating4(),
        "Q8" => quaternion8(),
        "C3:C4" => c3_by_c4(),
        "C7:C3" => c7_by_c3(),
        _ => {
            if let Some(k) = name.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
                if (1..=512).contains(&k) {
                    return cyclic(k);
                }
            }
            if let Some(k) = name.strip_prefix('D').and_then(|s| s.parse::<usize>().ok()) {
                if (2..=512).contains(&k) {
                    return dihedral(k);
                }
            }
            Err(Error::UnknownCatalog(name.to_string()))
        }
    }
}

/// Every catalog group of order at most `max_order`, in catalog order.
pub fn catalog_groups(max_order: usize) -> Vec<GroupRef> {
    catalog_names()
        .into_iter()
        .map(|n| by_name(n).expect("catalog entry must build"))
        .filter(|g| g.order() <= max_order)
        .collect()
}

// ---------------------------------------------------------------------------

/// Parses disjoint-cycle notation with 1-based, whitespace-separated points,
/// e.g. "(1 2 3)(4 5)", into an image vector on 0-based points.
pub fn parse_cycle_notation(degree: usize, input: &str) -> Result<Vec<usize>> {
    let mut images: Vec<usize> = (0..degree).collect();
    let mut moved = vec![false; degree];
    let mut rest = input.trim();
    if rest.is_empty() || rest == "()" {
        return Ok(images);
    }
    while !rest.is_empty() {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            let tok: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
            return Err(Error::Format {
                msg: format!("expected '(' in cycle string, found '{}'", tok),
            });
        }
        let close = rest.find(')').ok_or_else(|| Error::Format {
            msg: format!("unclosed cycle '{}'", rest),
        })?;
        let body = &rest[1..close];
        rest = &rest[close + 1..];
        let mut cycle: Vec<usize> = Vec::new();
        for tok in body.split_whitespace() {
            let point: usize = tok.parse().map_err(|_| Error::Format {
                msg: format!("invalid point token '{}'", tok),
            })?;
            if point == 0 || point > degree {
                return Err(Error::Format {
                    msg: format!("point '{}' outside 1..={}", tok, degree),
                });
            }
            let z = point - 1;
            if moved[z] {
                return Err(Error::Format {
                    msg: format!("point '{}' appears in two cycles", tok),
                });
            }
            moved[z] = true;
            cycle.push(z);
        }
        for (i, &a) in cycle.iter().enumerate() {
            images[a] = cycle[(i + 1) % cycle.len()];
        }
    }
    Ok(images)
}

/// Reads a group from a structured text file: either
/// `{"table": [[...]]}` or `{"degree": n, "perm_gens": ["(1 2 3)", ...]}`.
pub fn group_from_file(path: &Path) -> Result<GroupRef> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "group".to_string());
    group_from_json(&name, &text)
}

pub fn group_from_json(name: &str, text: &str) -> Result<GroupRef> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value.as_object().ok_or_else(|| Error::Format {
        msg: "group file must be a JSON object".into(),
    })?;
    if let Some(table) = obj.get("table") {
        let rows = table.as_array().ok_or_else(|| Error::Format {
            msg: "'table' must be an array of rows".into(),
        })?;
        let mut parsed: Vec<Vec<usize>> = Vec::with_capacity(rows.len());
        for row in rows {
            let cells = row.as_array().ok_or_else(|| Error::Format {
                msg: "table row must be an array".into(),
            })?;
            let mut r = Vec::with_capacity(cells.len());
            for c in cells {
                let v = c.as_u64().ok_or_else(|| Error::Format {
                    msg: format!("table entry '{}' is not a nonnegative integer", c),
                })?;
                r.push(v as usize);
            }
            parsed.push(r);
        }
        return Group::from_table(name, &parsed);
    }
    if let (Some(deg), Some(gens)) = (obj.get("degree"), obj.get("perm_gens")) {
        let degree = deg.as_u64().ok_or_else(|| Error::Format {
            msg: "'degree' must be a positive integer".into(),
        })? as usize;
        let gen_strings = gens.as_array().ok_or_else(|| Error::Format {
            msg: "'perm_gens' must be an array of cycle strings".into(),
        })?;
        let mut perms = Vec::new();
        for g in gen_strings {
            let s = g.as_str().ok_or_else(|| Error::Format {
                msg: format!("generator '{}' is not a string", g),
            })?;
            perms.push(parse_cycle_notation(degree, s)?);
        }
        return Group::from_permutation_generators(name, degree, &perms);
    }
    Err(Error::Format {
        msg: "group file needs either 'table' or 'degree' + 'perm_gens'".into(),
    })
}

/// Resolves "catalog:NAME" or a file path.
pub fn load_group_source(src: &str) -> Result<GroupRef> {
    if let Some(name) = src.strip_prefix("catalog:") {
        by_name(name)
    } else {
        group_from_file(Path::new(src))
    }
}

/// A keyed view of the catalog: (name, group) pairs up to an order bound.
pub fn catalog_with_names(max_order: usize) -> Vec<(String, GroupRef)> {
    catalog_names()
        .into_iter()
        .filter_map(|n| {
            let g = by_name(n).expect("catalog entry must build");
            (g.order() <= max_order).then(|| (n.to_string(), g))
        })
        .collect()
}
