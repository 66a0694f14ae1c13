use super::context::{DeclarationKind, GlobalTable};
use super::decl::check_decl;
use crate::resolve::resolve_decl;
use crate::surface::parse_source;

/// Postulates that Tier-A declarations may depend on, besides the primitives.
pub const TRUSTED_POSTULATES: [&str; 5] = ["funext00", "funext01", "funext11", "ua0", "ua1"];

/// Prefix shared by the edge-computation primitives of `gind`.
pub const GIND_EDGE_PREFIX: &str = "gind_edg";

pub fn is_trusted(name: &str) -> bool {
    TRUSTED_POSTULATES.contains(&name) || name.starts_with(GIND_EDGE_PREFIX)
}

/// Source of the edge-computation rule for vertex level `i` and motive level `j`:
/// `apd (gind P p e) (gedg i j r) = e i j r`.
pub fn gind_edge_source(i: u8, j: u8) -> String {
    format!(
        "postulate {GIND_EDGE_PREFIX}{i}{j}\n  \
           (V : U{i}) (E : V → V → U{i}) (P : GQuot V E → U{j})\n  \
           (p : Π (v : V), P (gpt V E v))\n  \
           (e : Π (a b : V) (r : E a b),\n         \
             Id (P (gpt V E b)) (J (λ y _ → P y) (p a) (gedg V E a b r)) (p b))\n  \
           (a b : V) (r : E a b)\n  \
         : Id (Id (P (gpt V E b)) (J (λ y _ → P y) (p a) (gedg V E a b r)) (p b))\n       \
             (J (λ y q → Id (P y) (J (λ z _ → P z) (p a) q) (gind P p e y)) refl (gedg V E a b r))\n       \
             (e a b r)\n"
    )
}

/// Name of the edge-computation primitive for the given levels.
pub fn gind_edge_name(i: u8, j: u8) -> String {
    format!("{GIND_EDGE_PREFIX}{i}{j}")
}

/// A table holding only the kernel primitives.
pub fn primitive_table() -> GlobalTable {
    let mut table = GlobalTable::new();
    for i in 0..=1 {
        for j in 0..=1 {
            let src = gind_edge_source(i, j);
            let module = parse_source(&src).expect("primitive source parses");
            for decl in &module.decls {
                let resolved = resolve_decl(&table, decl).expect("primitive source resolves");
                let mut checked =
                    check_decl(&table, &resolved, "<primitive>").unwrap_or_else(|d| {
                        panic!("primitive {} is ill-typed: {}", decl.name, d.full_message())
                    });
                checked.kind = DeclarationKind::Primitive;
                table.push(checked);
            }
        }
    }
    table
}
