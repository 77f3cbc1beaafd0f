fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(pcircle_cli::run(
        &args,
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    ));
}
