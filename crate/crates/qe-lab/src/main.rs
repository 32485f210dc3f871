fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(qe_lab::run(&args));
}
