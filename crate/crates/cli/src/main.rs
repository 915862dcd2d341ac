use std::io::Write;

fn main() {
    let env = std::env::var(mconvex_cli::caps::ENV_VAR).ok();
    let out = mconvex_cli::run(std::env::args_os(), env.as_deref());
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    std::process::exit(out.code);
}
