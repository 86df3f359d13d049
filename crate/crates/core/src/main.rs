fn main() {
    let code = stieltjes_vortex::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
