fn main() {
    let code = tsing::cli::run(std::env::args_os());
    std::process::exit(code.code());
}
