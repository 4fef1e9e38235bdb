fn main() {
    let code = subwindow_cli::run(std::env::args_os(), &mut std::io::stdout());
    std::process::exit(code);
}
