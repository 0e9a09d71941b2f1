from .configs import Caps, Config, load_configs

# 延迟加载配置，避免在导入时执行
global_configs: Config | None = None


def get_global_configs() -> Config:
    global global_configs
    if global_configs is None:
        global_configs = load_configs()
    return global_configs


def set_global_configs(config: Config | None) -> None:
    global global_configs
    global_configs = config


def get_caps() -> Caps:
    return get_global_configs().caps
