from app.ingestion.instance_file import (
    InstanceFile,
    dump_instance,
    file_to_instance,
    instance_to_file,
    load_context,
    load_instance,
    parse_instance,
)

__all__ = [
    "InstanceFile",
    "dump_instance",
    "file_to_instance",
    "instance_to_file",
    "load_context",
    "load_instance",
    "parse_instance",
]
