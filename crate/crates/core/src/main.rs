fn main() {
    let code = ghzmpc::cli::main_entry(std::env::args_os());
    std::process::exit(code);
}
