use stark_lft_acceptance::*;

fn main() {
    let mut all = Vec::new();
    let mut push = |c: Criterion| {
        println!("{}", c.line());
        all.push(c);
    };
    push(criterion1().expect("criterion 1"));
    push(criterion2().expect("criterion 2"));
    push(criterion3().expect("criterion 3"));
    let fig1 = figure(1).expect("figure 1");
    push(criterion4(&fig1));
    let fig2 = figure(2).expect("figure 2");
    push(criterion5(&fig2));
    push(criterion6(&fig1.0, &fig2.0));
    push(criterion7(&fig1.0, &fig2.0));
    push(criterion8().expect("criterion 8"));

    for (tag, r) in [("figure1", &fig1.0), ("figure2", &fig2.0)] {
        let (u, g) = (&r.uom.stats, &r.glft.stats);
        println!(
            "detail={tag} l_top={} median_uom={:.2e} q90_uom={:.2e} median_glft={:.2e} q90_glft={:.2e} mutual_sup={:.2e} sup_at_r={} sup_at_costheta={:.4}",
            r.l_top, u.median, u.q90, g.median, g.q90, r.mutual_sup, u.sup_r, u.sup_costheta
        );
    }

    let failed: Vec<String> = all.iter().filter(|c| !c.passed()).map(|c| c.id.to_string()).collect();
    println!(
        "acceptance passed={} failed={} [{}]",
        all.len() - failed.len(),
        failed.len(),
        failed.join(",")
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
