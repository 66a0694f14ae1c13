use std::collections::BTreeSet;

use super::check::{CheckResult, Checker};
use super::context::{Context, Declaration, DeclarationKind, GlobalTable};
use crate::nbe::{eval, reset_step_counter, Env};
use crate::resolve::ResolvedDecl;
use crate::surface::DeclKind;
use crate::syntax::Term;

/// Check a resolved declaration against the table. The declaration is not
/// added; see [`GlobalTable::push`].
pub fn check_decl(
    table: &GlobalTable,
    decl: &ResolvedDecl,
    file: &str,
) -> CheckResult<Declaration> {
    reset_step_counter();
    let ctx = Context::new();
    let mut checker = Checker::new(table, decl.span);
    let result: CheckResult<_> = (|| {
        checker.check_type(&ctx, &decl.ty)?;
        let ty = decl.ty.strip();
        let ty_value = eval(table, &Env::new(), &ty);
        let body = match &decl.body {
            Some(body) => {
                checker.check(&ctx, body, &ty_value)?;
                Some(body.strip())
            }
            None => None,
        };
        Ok((ty, ty_value, body))
    })();
    let (ty, ty_value, body) = result.map_err(|d| d.in_file(file))?;

    let kind = match decl.kind {
        DeclKind::Define => DeclarationKind::Define,
        DeclKind::Postulate => DeclarationKind::Postulate,
    };
    let mut assumptions = BTreeSet::new();
    if kind != DeclarationKind::Define {
        assumptions.insert(decl.name.clone());
    }
    collect_assumptions(table, &ty, &mut assumptions);
    if let Some(body) = &body {
        collect_assumptions(table, body, &mut assumptions);
    }
    let value = body.as_ref().map(|b| eval(table, &Env::new(), b));
    Ok(Declaration {
        name: decl.name.as_str().into(),
        kind,
        tier: decl.tier,
        ty,
        body,
        assumptions,
        file: file.to_string(),
        span: decl.span,
        ty_value,
        value,
    })
}

fn collect_assumptions(table: &GlobalTable, term: &Term, out: &mut BTreeSet<String>) {
    term.for_each_global(&mut |name| {
        if let Some(decl) = table.get(name) {
            out.extend(decl.assumptions.iter().cloned());
        }
    });
}
