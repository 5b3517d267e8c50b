"""
Generator registry for the F2 PRNG workbench.
Provides decorator-based generator registration and retrieval.
"""

import logging
from generators.base import GeneratorId, UnknownGenerator


logger = logging.getLogger(__name__)


class GeneratorRegistry:
    """
    Central registry for all generator classes.

    Uses singleton pattern with decorator-based registration.
    """

    _instance = None
    _generators = {}  # GeneratorId -> generator class
    _initialized = False

    def __new__(cls):
        """Ensure singleton instance."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @classmethod
    def register(cls, generator_class):
        """
        Decorator to register generator classes.

        Usage:
            @GeneratorRegistry.register
            class LFSR113(BaseGenerator):
                DESCRIPTOR = GeneratorDescriptor(...)

        Args:
            generator_class (type): Class with a DESCRIPTOR

        Returns:
            type: The class, unchanged
        """
        gen_id = generator_class.DESCRIPTOR.id
        cls._generators[gen_id] = generator_class
        logger.debug(f"Registered generator: {generator_class.__name__} as {gen_id.value}")
        return generator_class

    @classmethod
    def initialize(cls):
        """
        Initialize registry by importing all family modules.

        This ensures all generator classes are registered.
        """
        if cls._initialized:
            return

        family_modules = [
            'generators.lfsr',
            'generators.xorshift',
            'generators.congruential',
            'generators.tgfsr',
            'generators.automata',
        ]

        for module_name in family_modules:
            __import__(module_name)
            logger.debug(f"Imported {module_name}")

        cls._initialized = True
        logger.debug(f"Generator registry initialized with {len(cls._generators)} generators")

    @classmethod
    def get_class(cls, gen_id):
        """
        Get the class registered for an id.

        Args:
            gen_id (GeneratorId|str): Generator id or name

        Returns:
            type: Generator class

        Raises:
            UnknownGenerator: If the id is not registered
        """
        cls.initialize()
        gen_id = GeneratorId.parse(gen_id)
        try:
            return cls._generators[gen_id]
        except KeyError:
            raise UnknownGenerator(f"Generator not registered: {gen_id.value}") from None

    @classmethod
    def get_descriptor(cls, gen_id):
        """Get the descriptor of a registered generator."""
        return cls.get_class(gen_id).DESCRIPTOR

    @classmethod
    def create(cls, gen_id, seed=0):
        """
        Instantiate and seed a generator.

        Args:
            gen_id (GeneratorId|str): Generator id or name
            seed (int): 64-bit seed

        Returns:
            BaseGenerator: Seeded generator
        """
        return cls.get_class(gen_id)(seed)

    @classmethod
    def list_descriptors(cls):
        """
        Get all descriptors in roster order.

        Returns:
            list: GeneratorDescriptor objects
        """
        cls.initialize()
        return [cls._generators[g].DESCRIPTOR for g in GeneratorId if g in cls._generators]


def create(gen_id, seed=0):
    """
    Create a seeded generator state.

    Identical (id, seed) pairs always yield identical states.

    Args:
        gen_id (GeneratorId|str): Generator id or name
        seed (int): 64-bit seed

    Returns:
        BaseGenerator: Seeded generator
    """
    return GeneratorRegistry.create(gen_id, seed)


def list_generators():
    """
    List every roster generator in stable order.

    Returns:
        list: GeneratorDescriptor objects
    """
    return GeneratorRegistry.list_descriptors()
