from django.apps import AppConfig


class CohomologyConfig(AppConfig):
    name = 'cohomology'
    verbose_name = 'Equivariant cohomology engine'
